//! `exact-adjoint`: exact unitary conjugations from the command line.

mod failure;
mod reports;
mod rotate;
mod transform;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use failure::{write_file, CliResult, Failure, EXIT_ORACLE};
use transform::{GeneratorArgs, OracleArgs};

#[derive(Parser, Debug)]
#[command(name = "exact-adjoint", version, about = "Exact unitary conjugations as finite commutator series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Transform an operator: e^{iθG} H e^{-iθG}.
    Transform {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Rotation angle in radians.
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        /// Check the result against the dense oracle.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long)]
        json: bool,
        /// Write the operator here and a JSON sidecar next to it.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run transforms at several angles against the dense oracle.
    Verify {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Angles in radians; repeat or separate with commas.
        #[arg(long, required = true, allow_hyphen_values = true, value_delimiter = ',')]
        theta: Vec<f64>,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long)]
        json: bool,
    },
    /// Block structure and difference set of a UCC generator/fragment pair.
    Classify {
        #[arg(long)]
        ucc: String,
        #[arg(long)]
        fragment: String,
        /// Cross-check vanishing blocks with dense sandwich norms.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Series coefficients c_m(θ) for a difference set.
    Coeffs {
        /// Comma-separated difference set, e.g. `-2,0,2`.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', conflicts_with_all = ["ucc", "fragment"])]
        support: Option<Vec<f64>>,
        #[arg(long, requires = "fragment")]
        ucc: Option<String>,
        #[arg(long, requires = "ucc")]
        fragment: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long)]
        json: bool,
    },
    /// Rotate one- and two-body tensors by U = e^{iθM}.
    Rotate {
        /// FCIDUMP-style tensor file.
        #[arg(long)]
        tensors: PathBuf,
        /// Hermitian N×N matrix M, one row per line.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reproduce the reference table of UCC block patterns.
    Table1 {
        #[arg(long)]
        json: bool,
        /// Skip the dense sandwich-norm cross-check.
        #[arg(long)]
        no_dense: bool,
        /// Also sweep every generator/fragment pair on a small register.
        #[arg(long)]
        extended: bool,
        #[arg(long, default_value_t = 4)]
        orbitals: usize,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Run a Lagrange probe on every k-th pair of the sweep (0 disables).
        #[arg(long, default_value_t = 7)]
        probe_stride: usize,
    },
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn emit(text: &str, output: Option<&PathBuf>) -> CliResult<()> {
    match output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check(residual: Option<f64>, tolerance: f64) -> CliResult<()> {
    match residual {
        Some(r) if !(r < tolerance) => Err(Failure::new(
            EXIT_ORACLE,
            format!("oracle residual {r:.3e} exceeds tolerance {tolerance:.3e}"),
        )),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Transform {
            generator,
            theta,
            verify,
            oracle,
            json,
            output,
        } => {
            let problem = transform::load_problem(&generator)?;
            let report = transform::run(&problem, theta, verify, oracle.cap())?;
            match &output {
                Some(path) => {
                    write_file(path, &report.transformed_operator)?;
                    let mut sidecar = path.clone().into_os_string();
                    sidecar.push(".json");
                    write_file(&PathBuf::from(sidecar), &to_json(&report))?;
                    if json {
                        print!("{}", to_json(&report));
                    }
                }
                None if json => print!("{}", to_json(&report)),
                None => {
                    print!("{}", report.transformed_operator);
                    eprintln!(
                        "route {}, S = {}, {} commutators{}",
                        report.route,
                        reports::format_set(&report.s),
                        report.n_commutators,
                        report
                            .oracle_residual
                            .map(|r| format!(", oracle residual {r:.3e}"))
                            .unwrap_or_default()
                    );
                }
            }
            check(report.oracle_residual, oracle.tolerance)
        }
        Command::Verify {
            generator,
            theta,
            oracle,
            json,
        } => {
            let problem = transform::load_problem(&generator)?;
            let mut worst: f64 = 0.0;
            let mut items = Vec::with_capacity(theta.len());
            for &t in &theta {
                let report = transform::run(&problem, t, true, oracle.cap())?;
                let r = report.oracle_residual.unwrap_or(f64::INFINITY);
                worst = if r.is_nan() { f64::INFINITY } else { worst.max(r) };
                items.push(VerifyItem {
                    theta: t,
                    route: report.route,
                    n_commutators: report.n_commutators,
                    oracle_residual: r,
                    pass: r < oracle.tolerance,
                });
            }
            let summary = VerifySummary {
                schema: 1,
                tolerance: oracle.tolerance,
                max_residual: worst,
                pass: items.iter().all(|i| i.pass),
                items,
            };
            if json {
                print!("{}", to_json(&summary));
            } else {
                for i in &summary.items {
                    println!(
                        "theta {} route {} residual {:.3e} {}",
                        i.theta,
                        i.route,
                        i.oracle_residual,
                        if i.pass { "PASS" } else { "FAIL" }
                    );
                }
            }
            check(Some(worst), oracle.tolerance)
        }
        Command::Classify {
            ucc,
            fragment,
            verify,
            json,
        } => {
            let report = reports::classify(&ucc, &fragment, verify)?;
            if json {
                print!("{}", to_json(&report));
            } else {
                print!("{}", reports::classify_text(&report));
            }
            Ok(())
        }
        Command::Coeffs {
            support,
            ucc,
            fragment,
            theta,
            json,
        } => {
            let support = match (support, ucc, fragment) {
                (Some(s), None, None) => s,
                (None, Some(u), Some(f)) => {
                    let report = reports::classify(&u, &f, false)?;
                    report.s
                }
                _ => return Err(Failure::usage("give --support or both --ucc and --fragment")),
            };
            let report = reports::coeffs(&support, theta)?;
            if json {
                print!("{}", to_json(&report));
            } else {
                print!("{}", reports::coeffs_text(&report));
            }
            Ok(())
        }
        Command::Rotate {
            tensors,
            matrix,
            theta,
            verify,
            oracle,
            json,
            output,
        } => {
            let report = rotate::rotate(&tensors, &matrix, theta, verify, oracle.cap())?;
            if json {
                if let Some(path) = &output {
                    write_file(path, &report.fcidump)?;
                }
                print!("{}", to_json(&report));
            } else {
                emit(&report.fcidump, output.as_ref())?;
                if let Some(r) = report.oracle_residual {
                    eprintln!("oracle residual {r:.3e}");
                }
            }
            check(report.oracle_residual, oracle.tolerance)
        }
        Command::Table1 {
            json,
            no_dense,
            extended,
            orbitals,
            max_len,
            probe_stride,
        } => {
            let sweep = extended.then_some((orbitals, max_len, probe_stride));
            let report = reports::table1(!no_dense, sweep)?;
            if json {
                print!("{}", to_json(&report));
            } else {
                print!("{}", reports::table1_text(&report));
            }
            reports::table1_check(&report)
        }
    }
}

#[derive(Serialize)]
struct VerifyItem {
    theta: f64,
    route: &'static str,
    n_commutators: usize,
    oracle_residual: f64,
    pass: bool,
}

#[derive(Serialize)]
struct VerifySummary {
    schema: u32,
    tolerance: f64,
    max_residual: f64,
    pass: bool,
    items: Vec<VerifyItem>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}

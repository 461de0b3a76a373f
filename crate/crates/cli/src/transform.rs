//! The conjugation pipeline shared by `transform` and `verify`.

use std::path::{Path, PathBuf};

use clap::Args;
use exact_adjoint::adjoint::{solve_vandermonde, supported_set, transform_via_spectrum, SpectralGenerator};
use exact_adjoint::generators::table1::parse_string;
use exact_adjoint::generators::classify::{fragment, pair_orbitals};
use exact_adjoint::generators::{
    classify_ucc_pair, pauli_generator_transform, ucc_fragment_coefficients, ucc_fragment_transform,
    InvolutoryGenerator, InvolutoryKind, UCCGenerator,
};
use exact_adjoint::operator::jordan_wigner;
use exact_adjoint::oracle::{conjugate_exact, pauli_to_dense_capped, DenseOperator};
use exact_adjoint::{FermiSum, PauliSum};
use serde::Serialize;

use crate::failure::{in_file, read_file, CliResult, Failure};

#[derive(Args, Debug, Clone)]
pub struct GeneratorArgs {
    /// Pauli generator, inline (`"0.6 XZ; 0.8 ZI"`) or `@file`.
    #[arg(long, conflicts_with = "ucc")]
    pub generator: Option<String>,
    /// UCC excitation word such as `"3^ 2^ 1 0"`.
    #[arg(long)]
    pub ucc: Option<String>,
    /// Single fragment string; the operator is the string plus its adjoint.
    #[arg(long, requires = "ucc", conflicts_with = "hamiltonian")]
    pub fragment: Option<String>,
    /// Operator file: Pauli text for `--generator`, fermionic text for `--ucc`.
    #[arg(long)]
    pub hamiltonian: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    /// Tolerance for oracle residuals.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Qubit cap for dense matrices.
    #[arg(long, env = exact_adjoint::oracle::CAP_ENV_VAR)]
    pub max_qubits: Option<usize>,
}

impl OracleArgs {
    pub fn cap(&self) -> usize {
        self.max_qubits
            .map(|c| c.min(exact_adjoint::oracle::MAX_QUBIT_CAP))
            .unwrap_or(exact_adjoint::oracle::DEFAULT_QUBIT_CAP)
    }
}

/// The operator being transformed, held in whichever algebra the generator uses.
pub enum Problem {
    Pauli { g: PauliSum, h: PauliSum },
    UccFragment { g: UCCGenerator, word: String },
    UccOperator { g: UCCGenerator, h: FermiSum },
}

#[derive(Serialize, Debug, Clone)]
pub struct TransformReport {
    pub schema: u32,
    pub route: &'static str,
    pub theta: f64,
    #[serde(rename = "S")]
    pub s: Vec<f64>,
    pub coefficients: Vec<f64>,
    pub n_commutators: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case_label: Option<String>,
    pub transformed_operator: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_residual: Option<f64>,
}

fn inline_or_file(value: &str) -> CliResult<String> {
    match value.strip_prefix('@') {
        Some(path) => read_file(Path::new(path)),
        None => Ok(value.replace(';', "\n")),
    }
}

pub fn load_problem(args: &GeneratorArgs) -> CliResult<Problem> {
    match (&args.generator, &args.ucc) {
        (Some(gen), None) => {
            let g = PauliSum::parse(&inline_or_file(gen)?)?;
            let path = args
                .hamiltonian
                .as_ref()
                .ok_or_else(|| Failure::usage("--generator needs --hamiltonian"))?;
            let h = PauliSum::parse(&read_file(path)?).map_err(in_file(path))?;
            if g.n_qubits() != h.n_qubits() {
                return Err(Failure::usage(format!(
                    "generator acts on {} qubits, operator on {}",
                    g.n_qubits(),
                    h.n_qubits()
                )));
            }
            Ok(Problem::Pauli { g, h })
        }
        (None, Some(word)) => {
            let g = UCCGenerator::from_word(word, None)?;
            match (&args.fragment, &args.hamiltonian) {
                (Some(f), None) => Ok(Problem::UccFragment { g, word: f.clone() }),
                (None, Some(path)) => {
                    let h = FermiSum::parse(&read_file(path)?, None).map_err(in_file(path))?;
                    let n = h.n_orbitals().max(g.n_orbitals());
                    let h = h.with_orbitals(n)?;
                    let g = g.with_orbitals(n)?;
                    Ok(Problem::UccOperator { g, h })
                }
                _ => Err(Failure::usage("--ucc needs exactly one of --fragment or --hamiltonian")),
            }
        }
        _ => Err(Failure::usage("give exactly one of --generator or --ucc")),
    }
}

fn fermi_dense(op: &FermiSum, cap: usize) -> CliResult<DenseOperator> {
    Ok(pauli_to_dense_capped(&jordan_wigner(op, op.n_orbitals())?, cap)?)
}

fn residual(g: &DenseOperator, h: &DenseOperator, out: &DenseOperator, theta: f64) -> CliResult<f64> {
    Ok(out.distance(&conjugate_exact(g, h, theta)?)?)
}

/// Runs one transform, optionally checking it against the dense oracle.
pub fn run(problem: &Problem, theta: f64, verify: bool, cap: usize) -> CliResult<TransformReport> {
    if !theta.is_finite() {
        return Err(Failure::usage(format!("theta must be finite, got {theta}")));
    }
    let report = match problem {
        Problem::Pauli { g, h } => {
            let (report, out) = pauli_transform(g, h, theta, cap)?;
            if verify {
                let dense = |op: &PauliSum| pauli_to_dense_capped(op, cap);
                return with_residual(report, residual(&dense(g)?, &dense(h)?, &dense(&out)?, theta)?);
            }
            report
        }
        Problem::UccFragment { g, word } => {
            let t = parse_string(word)?;
            let pattern = classify_ucc_pair(g, &t);
            let out = ucc_fragment_transform(g, &t, theta)?;
            let report = TransformReport {
                schema: 1,
                route: "ucc_fragment",
                theta,
                s: pattern.supported().to_vec(),
                coefficients: ucc_fragment_coefficients(g, &t, theta)?,
                n_commutators: pattern.n_commutators(),
                case_label: Some(pattern.case_label.as_str().to_string()),
                transformed_operator: out.to_text(),
                oracle_residual: None,
            };
            if verify {
                let n = pair_orbitals(g, &t);
                let gn = g.with_orbitals(n)?;
                let out = out.with_orbitals(n)?;
                let r = residual(
                    &fermi_dense(gn.generator(), cap)?,
                    &fermi_dense(&fragment(&t, n)?, cap)?,
                    &fermi_dense(&out, cap)?,
                    theta,
                )?;
                return with_residual(report, r);
            }
            report
        }
        Problem::UccOperator { g, h } => {
            let s = supported_set(&g.spectral(), h)?;
            let out = transform_via_spectrum(g.generator(), h, theta, &s)?;
            let report = spectral_report("ucc_spectral", theta, s.supported(), out.to_text())?;
            if verify {
                let r = residual(
                    &fermi_dense(g.generator(), cap)?,
                    &fermi_dense(h, cap)?,
                    &fermi_dense(&out, cap)?,
                    theta,
                )?;
                return with_residual(report, r);
            }
            report
        }
    };
    Ok(report)
}

fn with_residual(mut report: TransformReport, r: f64) -> CliResult<TransformReport> {
    report.oracle_residual = Some(r);
    Ok(report)
}

fn spectral_report(route: &'static str, theta: f64, s: &[f64], text: String) -> CliResult<TransformReport> {
    let (coefficients, n_commutators) = if s.is_empty() {
        (Vec::new(), 0)
    } else {
        let c = solve_vandermonde(s, theta)?;
        let n = c.n_commutators();
        (c.coefficients, n)
    };
    Ok(TransformReport {
        schema: 1,
        route,
        theta,
        s: s.to_vec(),
        coefficients,
        n_commutators,
        case_label: None,
        transformed_operator: text,
        oracle_residual: None,
    })
}

fn pauli_transform(
    g: &PauliSum,
    h: &PauliSum,
    theta: f64,
    cap: usize,
) -> CliResult<(TransformReport, PauliSum)> {
    if let Ok(inv) = InvolutoryGenerator::from_pauli_sum(g) {
        let spectral = SpectralGenerator::new(g.clone(), &[-1.0, 1.0])?;
        let s = supported_set(&spectral, h)?;
        let out = pauli_generator_transform(&inv, h, theta)?;
        let route = match inv.kind() {
            InvolutoryKind::SinglePauli => "single_pauli",
            InvolutoryKind::AnticommutingSum => "anticommuting_sum",
        };
        return Ok((spectral_report(route, theta, s.supported(), out.to_text())?, out));
    }
    let eigs = pauli_to_dense_capped(g, cap)?.spectrum()?;
    let spectral = SpectralGenerator::new(g.clone(), &eigs)?;
    let s = supported_set(&spectral, h)?;
    let out = transform_via_spectrum(g, h, theta, &s)?;
    Ok((spectral_report("spectral", theta, s.supported(), out.to_text())?, out))
}

//! `classify`, `coeffs` and `table1`.

use exact_adjoint::adjoint::solve_vandermonde;
use exact_adjoint::generators::table1::{dense_vanishing, extended_sweep, parse_string, reproduce_table1, RowReport, SweepReport};
use exact_adjoint::generators::{classify_ucc_pair, UCCGenerator};
use serde::Serialize;

use crate::failure::{CliResult, Failure, EXIT_ORACLE, EXIT_TABLE};

#[derive(Serialize, Debug)]
pub struct ClassifyReport {
    pub schema: u32,
    #[serde(rename = "T_G")]
    pub t_g: String,
    #[serde(rename = "T_alpha")]
    pub t_alpha: String,
    pub case_label: String,
    pub vanishing_blocks: Vec<String>,
    #[serde(rename = "S")]
    pub s: Vec<f64>,
    pub n_commutators: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dense_vanishing_blocks: Option<Vec<String>>,
}

pub fn classify(ucc: &str, fragment: &str, dense: bool) -> CliResult<ClassifyReport> {
    let g = UCCGenerator::from_word(ucc, None)?;
    let t = parse_string(fragment)?;
    let pattern = classify_ucc_pair(&g, &t);
    let labels = |set: &std::collections::BTreeSet<_>| -> Vec<String> {
        set.iter()
            .map(|f: &exact_adjoint::generators::BlockFamily| f.label().to_string())
            .collect()
    };
    let report = ClassifyReport {
        schema: 1,
        t_g: ucc.to_string(),
        t_alpha: fragment.to_string(),
        case_label: pattern.case_label.as_str().to_string(),
        vanishing_blocks: labels(&pattern.vanishing),
        s: pattern.supported().to_vec(),
        n_commutators: pattern.n_commutators(),
        dense_vanishing_blocks: if dense {
            Some(labels(&dense_vanishing(&g, &t)?))
        } else {
            None
        },
    };
    if let Some(d) = &report.dense_vanishing_blocks {
        if *d != report.vanishing_blocks {
            return Err(Failure::new(
                EXIT_ORACLE,
                format!("dense vanishing blocks {d:?} disagree with {:?}", report.vanishing_blocks),
            ));
        }
    }
    Ok(report)
}

pub fn classify_text(r: &ClassifyReport) -> String {
    let mut out = format!(
        "T_G = {}\nT_alpha = {}\ncase = {}\nvanishing = {}\nS = {}\nn_commutators = {}\n",
        r.t_g,
        r.t_alpha,
        r.case_label,
        join(&r.vanishing_blocks),
        format_set(&r.s),
        r.n_commutators
    );
    if let Some(d) = &r.dense_vanishing_blocks {
        out.push_str(&format!("dense vanishing = {}\n", join(d)));
    }
    out
}

#[derive(Serialize, Debug)]
pub struct CoeffReport {
    pub schema: u32,
    pub theta: f64,
    #[serde(rename = "S")]
    pub s: Vec<f64>,
    pub coefficients: Vec<f64>,
    pub n_commutators: usize,
}

pub fn coeffs(support: &[f64], theta: f64) -> CliResult<CoeffReport> {
    if !theta.is_finite() {
        return Err(Failure::usage(format!("theta must be finite, got {theta}")));
    }
    let c = solve_vandermonde(support, theta)?;
    Ok(CoeffReport {
        schema: 1,
        theta,
        s: support.to_vec(),
        n_commutators: c.n_commutators(),
        coefficients: c.coefficients,
    })
}

pub fn coeffs_text(r: &CoeffReport) -> String {
    let mut out = format!("S = {}\n", format_set(&r.s));
    for (m, c) in r.coefficients.iter().enumerate() {
        out.push_str(&format!("c{m} = {c:e}\n"));
    }
    out
}

#[derive(Serialize, Debug)]
pub struct TableReport {
    pub schema: u32,
    pub rows: Vec<RowReport>,
    pub reproduced: usize,
    pub total: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extended: Option<SweepReport>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.reproduced == self.total && self.extended.as_ref().map_or(true, |e| e.all_agree())
    }
}

pub fn table1(dense: bool, extended: Option<(usize, usize, usize)>) -> CliResult<TableReport> {
    let rows = reproduce_table1(dense)?;
    let reproduced = rows.iter().filter(|r| r.agrees).count();
    let extended = match extended {
        Some((n, max_len, stride)) => Some(extended_sweep(n, max_len, stride)?),
        None => None,
    };
    Ok(TableReport {
        schema: 1,
        total: rows.len(),
        rows,
        reproduced,
        extended,
    })
}

pub fn table1_text(r: &TableReport) -> String {
    let mut out = String::new();
    for (i, row) in r.rows.iter().enumerate() {
        out.push_str(&format!(
            "row {}: {} | {} | {} | vanishing {} | S = {} | {}\n",
            i + 1,
            row.t_g,
            row.t_alpha,
            row.case_label,
            join(&row.vanishing_blocks),
            format_set(&row.s),
            if row.agrees { "ok" } else { "MISMATCH" }
        ));
    }
    out.push_str(&format!("{}/{} rows reproduced\n", r.reproduced, r.total));
    if let Some(e) = &r.extended {
        out.push_str(&format!(
            "sweep on {} orbitals: {} pairs, {} block agreements, {}/{} probe agreements, {} exclusion violations\n",
            e.n_orbitals, e.pairs, e.block_agreements, e.probe_agreements, e.probes_run, e.exclusion_violations
        ));
        for d in &e.disagreements {
            out.push_str(&format!("  disagreement: {d}\n"));
        }
    }
    out
}

pub fn table1_check(r: &TableReport) -> CliResult<()> {
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_TABLE, "table reproduction disagrees"))
    }
}

fn join(items: &[String]) -> String {
    if items.is_empty() {
        "none".to_string()
    } else {
        items.join(", ")
    }
}

pub fn format_set(s: &[f64]) -> String {
    let parts: Vec<String> = s.iter().map(|v| format!("{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

//! `rotate`: orbital rotation of FCIDUMP-style tensors.

use std::path::Path;

use exact_adjoint::lie::{parse_matrix, rotate_tensors, ElectronicTensors, OrbitalRotation};
use exact_adjoint::operator::jordan_wigner;
use exact_adjoint::FermiSum;
use exact_adjoint::oracle::{conjugate_exact, pauli_to_dense_capped};
use num_complex::Complex64;
use serde::Serialize;

use crate::failure::{in_file, read_file, CliResult};

#[derive(Serialize, Debug)]
pub struct RotateReport {
    pub schema: u32,
    pub n_orbitals: usize,
    pub theta: f64,
    pub unitarity_residual: f64,
    pub fcidump: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_residual: Option<f64>,
}

pub fn rotate(tensors: &Path, matrix: &Path, theta: f64, verify: bool, cap: usize) -> CliResult<RotateReport> {
    let t = ElectronicTensors::parse_fcidump(&read_file(tensors)?).map_err(in_file(tensors))?;
    let m = parse_matrix(&read_file(matrix)?).map_err(in_file(matrix))? * Complex64::new(theta, 0.0);
    let rot = OrbitalRotation::new(m)?;
    let rotated = rotate_tensors(&rot, &t)?;
    let oracle_residual = if verify {
        let n = t.n_orbitals();
        let dense = |op: &FermiSum| pauli_to_dense_capped(&jordan_wigner(op, n)?, cap);
        let k = dense(&rot.generator_operator()?)?;
        let expected = conjugate_exact(&k, &dense(&t.to_fermi_sum()?)?, 1.0)?;
        Some(dense(&rotated.to_fermi_sum()?)?.distance(&expected)?)
    } else {
        None
    };
    Ok(RotateReport {
        schema: 1,
        n_orbitals: t.n_orbitals(),
        theta,
        unitarity_residual: rot.unitarity_residual(),
        fcidump: rotated.to_fcidump(0.0),
        oracle_residual,
    })
}

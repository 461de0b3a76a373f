//! Coefficients of the finite conjugation polynomial from the generalized
//! Vandermonde system `e^{iθΔ} = Σ_m c_m (iΔ)^m`, one row per `Δ ∈ S`.

use num_complex::Complex64;
use serde::Serialize;

use super::DIFF_TOL;
use crate::error::{Error, Result};
use crate::linalg::{lu_solve, CMatrix, CVector};

const RESIDUAL_TOL: f64 = 1e-9;
const IMAG_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientVector {
    pub theta: f64,
    pub coefficients: Vec<f64>,
}

impl CoefficientVector {
    /// Number of nested commutators the polynomial needs.
    pub fn n_commutators(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }
}

/// Complex solution of the square system with `d = |S| - 1`.
pub fn solve_vandermonde_complex(support: &[f64], theta: f64) -> Result<Vec<Complex64>> {
    if support.is_empty() {
        return Err(Error::InvalidInput("empty difference set".into()));
    }
    for (i, a) in support.iter().enumerate() {
        if support[i + 1..].iter().any(|b| (a - b).abs() <= DIFF_TOL) {
            return Err(Error::SingularSystem);
        }
    }
    let n = support.len();
    let w = CMatrix::from_fn(n, n, |r, m| Complex64::new(0.0, support[r]).powu(m as u32));
    let e = CVector::from_fn(n, |r, _| Complex64::from_polar(1.0, theta * support[r]));
    let c = lu_solve(&w, &e).ok_or(Error::SingularSystem)?;
    let residual = (&w * &c - &e).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(residual < RESIDUAL_TOL) {
        return Err(Error::SingularSystem);
    }
    Ok(c.iter().copied().collect())
}

/// Real coefficients `c_0..c_{|S|-1}`; fails if any imaginary part exceeds `1e-9`.
pub fn solve_vandermonde(support: &[f64], theta: f64) -> Result<CoefficientVector> {
    let c = solve_vandermonde_complex(support, theta)?;
    let residue = c.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if residue >= IMAG_TOL {
        return Err(Error::ComplexResidueTooLarge { residue });
    }
    Ok(CoefficientVector {
        theta,
        coefficients: c.iter().map(|z| z.re).collect(),
    })
}

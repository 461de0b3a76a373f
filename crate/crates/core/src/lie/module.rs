//! Operator spaces closed under commutation with a generator.
//!
//! If `[G, B_i] = Σ_j A_ij B_j` for a basis `{B_i}`, then
//! `e^{iθG} B_i e^{-iθG} = Σ_j [e^{iθA}]_ij B_j`: the conjugation is a
//! matrix exponential of the representation, whatever the length of the BCH
//! series on individual elements.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::orbital::ComplexMatrix;
use crate::error::{Error, Result};
use crate::linalg::{expm, least_squares, CMatrix, CVector};
use crate::operator::{FermiString, FermiSum};

const CLOSURE_TOL: f64 = 1e-10;

/// `A` with `[G, B_i] = Σ_j A_ij B_j`, solved by least squares in
/// normal-ordered coefficient space.
pub fn module_adjoint_matrix(g: &FermiSum, basis: &[FermiSum]) -> Result<ComplexMatrix> {
    if basis.is_empty() {
        return Err(Error::InvalidInput("empty module basis".into()));
    }
    let comms: Vec<FermiSum> = basis.iter().map(|b| g.commutator(b)).collect::<Result<_>>()?;
    let mut rows: BTreeMap<FermiString, usize> = BTreeMap::new();
    for op in basis.iter().chain(&comms) {
        for (s, _) in op.terms() {
            let next = rows.len();
            rows.entry(s.clone()).or_insert(next);
        }
    }
    let m = rows.len();
    let d = basis.len();
    let mut b = CMatrix::zeros(m.max(1), d);
    for (j, op) in basis.iter().enumerate() {
        for (s, c) in op.terms() {
            b[(rows[s], j)] = *c;
        }
    }
    let mut a = ComplexMatrix::zeros(d, d);
    for (i, c_op) in comms.iter().enumerate() {
        let mut rhs = CVector::zeros(m.max(1));
        for (s, c) in c_op.terms() {
            rhs[rows[s]] = *c;
        }
        let x = least_squares(&b, &rhs).ok_or(Error::SingularSystem)?;
        let residual = (&b * &x - &rhs).norm();
        if residual > CLOSURE_TOL * rhs.norm().max(1.0) {
            return Err(Error::NotClosed { residual });
        }
        for j in 0..d {
            a[(i, j)] = x[j];
        }
    }
    Ok(a)
}

/// `e^{iθA}`.
pub fn module_exponential(a: &ComplexMatrix, theta: f64) -> ComplexMatrix {
    expm(&(a * Complex64::new(0.0, theta)))
}

/// `e^{iθG} B_i e^{-iθG}` for every basis element.
pub fn module_transform(a: &ComplexMatrix, basis: &[FermiSum], theta: f64) -> Result<Vec<FermiSum>> {
    if a.nrows() != basis.len() || a.ncols() != basis.len() {
        return Err(Error::DimensionMismatch {
            left: a.nrows(),
            right: basis.len(),
        });
    }
    let w = module_exponential(a, theta);
    (0..basis.len())
        .map(|i| {
            let mut acc = FermiSum::zero(basis[0].n_orbitals());
            for (j, b) in basis.iter().enumerate() {
                acc = acc.axpy(w[(i, j)], b)?;
            }
            Ok(acc)
        })
        .collect()
}

/// `{a_0^dag, ..., a_{N-1}^dag}`.
pub fn creation_basis(n: usize) -> Vec<FermiSum> {
    (0..n).map(|p| FermiSum::creation(n, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::orbital::OrbitalRotation;

    #[test]
    fn creation_module_is_transpose() {
        let mut m = ComplexMatrix::zeros(3, 3);
        m[(0, 1)] = Complex64::new(0.3, 0.2);
        m[(1, 0)] = Complex64::new(0.3, -0.2);
        m[(2, 2)] = Complex64::new(-0.7, 0.0);
        let rot = OrbitalRotation::new(m.clone()).unwrap();
        let a = module_adjoint_matrix(&rot.generator_operator().unwrap(), &creation_basis(3)).unwrap();
        assert!(crate::linalg::max_abs(&(a - m.transpose())) < 1e-12);
    }

    #[test]
    fn leaving_the_span_is_reported() {
        // [a1^ a0, a0^] = a1^ is outside span{a0^}
        let mut g = FermiSum::zero(2);
        g.add_word(
            &[crate::operator::LadderOp::create(1), crate::operator::LadderOp::annihilate(0)],
            Complex64::new(1.0, 0.0),
        )
        .unwrap();
        let basis = vec![FermiSum::creation(2, 0)];
        assert!(matches!(module_adjoint_matrix(&g, &basis), Err(Error::NotClosed { .. })));
    }
}

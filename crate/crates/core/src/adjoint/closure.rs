//! Krylov closure detection and companion-matrix resummation.
//!
//! The Krylov vectors `K_j = ad_{iG}^j(H)` are orthogonalized on the fly
//! (modified Gram-Schmidt, two passes), giving `K = Q R` with `R` upper
//! triangular. The first `K_d` whose residual against `span{K_0..K_{d-1}}`
//! is negligible closes the sequence; its projection `p` gives the recurrence
//! through `R c = p`.

use num_complex::Complex64;

use super::{ad_i, combine, require_hermitian};
use crate::error::{Error, Result};
use crate::linalg::{expm, CMatrix, CVector};
use crate::operator::Operator;

/// Relative residual below which `K_d` counts as dependent.
pub const CLOSURE_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct AdjointClosure<O> {
    generator: O,
    powers: Vec<O>,
    recurrence: Vec<Complex64>,
    residual: f64,
}

impl<O: Operator> AdjointClosure<O> {
    /// `ad_{iG}^j(H)` for `j = 0..=d`.
    pub fn powers(&self) -> &[O] {
        &self.powers
    }

    /// `c_0..c_{d-1}` with `ad^d(H) = Σ_j c_j ad^j(H)`.
    pub fn recurrence(&self) -> &[Complex64] {
        &self.recurrence
    }

    pub fn degree(&self) -> usize {
        self.recurrence.len()
    }

    pub fn generator(&self) -> &O {
        &self.generator
    }

    /// Norm of the part of `ad^d(H)` outside the span of lower powers.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Gram matrix `<K_i, K_j>` of the independent powers `K_0..K_{d-1}`.
    pub fn gram_matrix(&self) -> Vec<Vec<Complex64>> {
        let d = self.degree();
        (0..d)
            .map(|i| (0..d).map(|j| self.powers[i].inner(&self.powers[j])).collect())
            .collect()
    }

    /// Companion matrix of `ad_{iG}` on the Krylov basis.
    pub fn companion(&self) -> Vec<Vec<Complex64>> {
        let m = companion_matrix(&self.recurrence);
        (0..m.nrows())
            .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
            .collect()
    }

    /// `e^{iθG} H e^{-iθG} = Σ_m w_m(θ) K_m` with `w = exp(θ C) e_0`.
    pub fn transform(&self, theta: f64) -> Result<O> {
        let d = self.degree();
        if d == 0 {
            return Ok(self.powers[0].clone());
        }
        let c = companion_matrix(&self.recurrence) * Complex64::new(theta, 0.0);
        let w = expm(&c).column(0).into_owned();
        combine(&self.powers[..d], w.iter().copied())
    }
}

fn companion_matrix(recurrence: &[Complex64]) -> CMatrix {
    let d = recurrence.len();
    let mut m = CMatrix::zeros(d, d);
    for j in 0..d {
        if j + 1 < d {
            m[(j + 1, j)] = Complex64::new(1.0, 0.0);
        }
        m[(j, d - 1)] = recurrence[j];
    }
    m
}

/// Smallest `d ≤ max_degree` with `ad^d(H)` in the span of lower powers.
pub fn detect_closure<O: Operator>(g: &O, h: &O, max_degree: usize) -> Result<AdjointClosure<O>> {
    require_hermitian(g)?;
    let h_norm = h.norm();
    if h_norm == 0.0 {
        return Ok(AdjointClosure {
            generator: g.clone(),
            powers: vec![h.clone()],
            recurrence: Vec::new(),
            residual: 0.0,
        });
    }
    let mut powers = vec![h.clone()];
    let mut basis = vec![h.scale(Complex64::new(1.0 / h_norm, 0.0))];
    let mut r_cols: Vec<Vec<Complex64>> = vec![vec![Complex64::new(h_norm, 0.0)]];
    let mut last_residual = f64::INFINITY;

    for d in 1..=max_degree {
        let k = ad_i(g, powers.last().unwrap())?;
        let k_norm = k.norm();
        let mut proj = vec![Complex64::new(0.0, 0.0); d];
        let mut v = k.clone();
        for _pass in 0..2 {
            for (i, q) in basis.iter().enumerate() {
                let r = q.inner(&v);
                proj[i] += r;
                v = v.axpy(-r, q)?;
            }
        }
        let residual = v.norm();
        powers.push(k);
        if residual <= CLOSURE_TOL * h_norm.max(k_norm) {
            let recurrence = back_substitute(&r_cols, &proj)?;
            return Ok(AdjointClosure {
                generator: g.clone(),
                powers,
                recurrence,
                residual,
            });
        }
        last_residual = residual;
        let mut col = proj;
        col.push(Complex64::new(residual, 0.0));
        r_cols.push(col);
        basis.push(v.scale(Complex64::new(1.0 / residual, 0.0)));
    }
    Err(Error::NoClosureWithinBound {
        max_degree,
        residual: last_residual,
    })
}

/// Solves `R c = p` for upper-triangular `R` given column-wise.
fn back_substitute(r_cols: &[Vec<Complex64>], p: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = p.len();
    let r = CMatrix::from_fn(d, d, |i, j| r_cols[j].get(i).copied().unwrap_or_default());
    let rhs = CVector::from_column_slice(p);
    let c = r
        .solve_upper_triangular(&rhs)
        .ok_or(Error::SingularSystem)?;
    Ok(c.iter().copied().collect())
}

/// Resums the conjugation from a closure computed for this `(G, H)`.
pub fn transform_via_closure<O: Operator>(
    g: &O,
    h: &O,
    theta: f64,
    closure: &AdjointClosure<O>,
) -> Result<O> {
    let tol = 1e-12 * h.norm().max(1.0);
    if closure.powers[0].axpy(Complex64::new(-1.0, 0.0), h)?.norm() > tol
        || closure.generator.axpy(Complex64::new(-1.0, 0.0), g)?.norm() > 1e-12 * g.norm().max(1.0)
    {
        return Err(Error::InvalidInput(
            "closure was computed for a different (G, H) pair".into(),
        ));
    }
    closure.transform(theta)
}

//! Small dense linear-algebra helpers over `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub(crate) type CMatrix = DMatrix<Complex64>;
pub(crate) type CVector = DVector<Complex64>;

/// Solves a square system by partial-pivot LU; `None` if singular.
pub(crate) fn lu_solve(a: &CMatrix, b: &CVector) -> Option<CVector> {
    a.clone().lu().solve(b)
}

/// Least-squares solution of `a x = b` via SVD.
pub(crate) fn least_squares(a: &CMatrix, b: &CVector) -> Option<CVector> {
    a.clone().svd(true, true).solve(b, 1e-14).ok()
}

/// General matrix exponential (Pade scaling and squaring).
pub(crate) fn expm(a: &CMatrix) -> CMatrix {
    a.exp()
}

/// `e^{iθM}` for Hermitian `M` via its eigendecomposition.
pub(crate) fn hermitian_exp_i(m: &CMatrix, theta: f64) -> CMatrix {
    let sym = (m + m.adjoint()).map(|e| e * 0.5);
    let eig = SymmetricEigen::new(sym);
    let v = &eig.eigenvectors;
    let scaled = DMatrix::from_fn(v.nrows(), v.ncols(), |r, c| {
        v[(r, c)] * Complex64::from_polar(1.0, theta * eig.eigenvalues[c])
    });
    scaled * v.adjoint()
}

pub(crate) fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|e| e.norm()).fold(0.0, f64::max)
}

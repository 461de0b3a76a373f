//! Nested commutators and the finite conjugation polynomial.
//!
//! `e^{iθG} H e^{-iθG} = Σ_j θ^j/j! ad_{iG}^j(H)` terminates or resums
//! exactly whenever the Krylov sequence `ad_{iG}^j(H)` closes. Two routes are
//! provided: a spectral one (difference set plus Vandermonde coefficients) and
//! a Krylov one (recurrence plus companion-matrix exponential). They agree
//! wherever both apply.

pub mod closure;
pub mod spectral;
pub mod vandermonde;

pub use closure::{detect_closure, transform_via_closure, AdjointClosure, CLOSURE_TOL};
pub use spectral::{
    anticommuting_reduction, difference_set, lagrange_block_probe, supported_set,
    DifferenceSet, SpectralGenerator,
};
pub use vandermonde::{solve_vandermonde, solve_vandermonde_complex, CoefficientVector};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::Operator;

/// Absolute tolerance for merging eigenvalues and their differences.
pub(crate) const DIFF_TOL: f64 = 1e-9;
const HERMITIAN_TOL: f64 = 1e-10;

const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn require_hermitian<O: Operator>(g: &O) -> Result<()> {
    let deviation = g.hermiticity_deviation();
    if deviation > HERMITIAN_TOL * g.norm().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// `ad_{iG}(X) = [iG, X]`.
pub fn ad_i<O: Operator>(g: &O, x: &O) -> Result<O> {
    Ok(g.commutator(x)?.scale(I))
}

/// `[ad_{iG}^0(H), ..., ad_{iG}^{max_order}(H)]`.
pub fn nested_adjoints<O: Operator>(g: &O, h: &O, max_order: usize) -> Result<Vec<O>> {
    require_hermitian(g)?;
    let mut out = Vec::with_capacity(max_order + 1);
    out.push(h.clone());
    for _ in 0..max_order {
        let next = ad_i(g, out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// `Σ_{m<|S|} c_m(θ) ad_{iG}^m(H)` with coefficients from the Vandermonde solve.
pub fn transform_via_spectrum<O: Operator>(
    g: &O,
    h: &O,
    theta: f64,
    s: &DifferenceSet,
) -> Result<O> {
    if s.supported.is_empty() {
        if h.is_zero() {
            return Ok(h.clone());
        }
        return Err(Error::InvalidInput(
            "empty supported set for a nonzero operator".into(),
        ));
    }
    let coeffs = solve_vandermonde(&s.supported, theta)?;
    let powers = nested_adjoints(g, h, coeffs.n_commutators())?;
    combine(&powers, coeffs.coefficients.iter().map(|&c| Complex64::new(c, 0.0)))
}

pub(crate) fn combine<O: Operator>(
    powers: &[O],
    weights: impl IntoIterator<Item = Complex64>,
) -> Result<O> {
    let mut acc = powers[0].zero_like();
    for (k, w) in powers.iter().zip(weights) {
        acc = acc.axpy(w, k)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::PauliSum;

    fn p(label: &str, c: f64) -> PauliSum {
        PauliSum::from_label(label, c).unwrap()
    }

    #[test]
    fn nested_z_x() {
        let k = nested_adjoints(&p("Z", 1.0), &p("X", 1.0), 2).unwrap();
        assert_eq!(k[0], p("X", 1.0));
        assert_eq!(k[1], p("Y", -2.0));
        assert_eq!(k[2], p("X", -4.0));
        assert_eq!(nested_adjoints(&p("Z", 1.0), &p("X", 1.0), 0).unwrap().len(), 1);
    }

    #[test]
    fn rejects_non_hermitian_generator() {
        let g = PauliSum::from_terms(1, [("Z", Complex64::new(0.0, 1.0))]).unwrap();
        assert!(matches!(
            nested_adjoints(&g, &p("X", 1.0), 1),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn spectrum_route_z_x() {
        let s = difference_set(&[-1.0, 1.0]).unwrap().with_supported(vec![-2.0, 2.0]);
        for theta in [0.0, 0.4, 2.0] {
            let h = transform_via_spectrum(&p("Z", 1.0), &p("X", 1.0), theta, &s).unwrap();
            let expected = p("X", (2.0 * theta).cos()).add(&p("Y", -(2.0 * theta).sin())).unwrap();
            assert!(h.max_deviation(&expected) < 1e-14);
        }
    }

    #[test]
    fn generator_is_fixed() {
        let g = p("XY", 0.5).add(&p("ZZ", 0.5)).unwrap();
        let s = difference_set(&[0.0]).unwrap();
        let h = transform_via_spectrum(&g, &g, 0.9, &s).unwrap();
        assert!(h.max_deviation(&g) < 1e-14);
    }
}

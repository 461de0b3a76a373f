//! Involutory Pauli generators (`G² = I`): single Pauli strings and
//! normalized sums of pairwise anticommuting strings.

use num_complex::Complex64;
use serde::Serialize;

use crate::adjoint::{ad_i, solve_vandermonde};
use crate::error::{Error, Result};
use crate::operator::{PauliString, PauliSum};

const NORM_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InvolutoryKind {
    SinglePauli,
    AnticommutingSum,
}

#[derive(Clone, Debug)]
pub struct InvolutoryGenerator {
    body: PauliSum,
    kind: InvolutoryKind,
    strings: Vec<PauliString>,
    weights: Vec<f64>,
}

impl InvolutoryGenerator {
    /// `G = ±P` for a phase-free Pauli string.
    pub fn single(string: PauliString, sign: f64) -> Result<Self> {
        if sign.abs() != 1.0 {
            return Err(Error::InvalidGenerator(format!(
                "single Pauli generator needs coefficient ±1, got {sign}"
            )));
        }
        Self::build(vec![(string, sign)], InvolutoryKind::SinglePauli)
    }

    /// `G = Σ d_j P_j` with pairwise anticommuting `P_j` and `Σ d_j² = 1`.
    pub fn anticommuting(terms: Vec<(PauliString, f64)>) -> Result<Self> {
        Self::build(terms, InvolutoryKind::AnticommutingSum)
    }

    /// Recognizes an involutory generator in a Pauli sum: one string with
    /// coefficient ±1, or real-weighted pairwise anticommuting strings.
    pub fn from_pauli_sum(g: &PauliSum) -> Result<Self> {
        let mut terms = Vec::with_capacity(g.len());
        for (s, c) in g.terms() {
            if c.im.abs() > NORM_TOL {
                return Err(Error::InvalidGenerator(format!(
                    "coefficient of {s} is not real"
                )));
            }
            terms.push((s.clone(), c.re));
        }
        match terms.len() {
            0 => Err(Error::InvalidGenerator("generator is zero".into())),
            1 => {
                let (s, c) = terms.pop().unwrap();
                Self::single(s, c)
            }
            _ => Self::anticommuting(terms),
        }
    }

    fn build(terms: Vec<(PauliString, f64)>, kind: InvolutoryKind) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidGenerator("no Pauli terms".into()));
        }
        let n = terms[0].0.n_qubits();
        for (s, _) in &terms {
            if s.n_qubits() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: s.n_qubits(),
                });
            }
            if s.phase() != 0 {
                return Err(Error::InvalidGenerator(format!(
                    "string {s} carries a phase"
                )));
            }
        }
        for (i, (a, _)) in terms.iter().enumerate() {
            for (b, _) in &terms[i + 1..] {
                if a.commutes(b)? {
                    return Err(Error::InvalidGenerator(format!(
                        "{} and {} commute",
                        a.label(),
                        b.label()
                    )));
                }
            }
        }
        let norm2: f64 = terms.iter().map(|(_, d)| d * d).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidGenerator(format!(
                "squared weights sum to {norm2}, not 1"
            )));
        }
        let mut body = PauliSum::zero(n);
        for (s, d) in &terms {
            body.add_term(s.clone(), Complex64::new(*d, 0.0));
        }
        let (strings, weights) = terms.into_iter().unzip();
        Ok(Self {
            body,
            kind,
            strings,
            weights,
        })
    }

    pub fn body(&self) -> &PauliSum {
        &self.body
    }

    pub fn kind(&self) -> InvolutoryKind {
        self.kind
    }

    pub fn strings(&self) -> &[PauliString] {
        &self.strings
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n_qubits(&self) -> usize {
        self.body.n_qubits()
    }

    /// Max coefficient deviation of `G²` from the identity.
    pub fn square_residual(&self) -> f64 {
        let sq = self.body.mul(&self.body).expect("same register");
        sq.max_deviation(&PauliSum::identity(self.n_qubits()))
    }

    /// Distinct eigenvalues; `{±1}` except for `G = ±I`.
    pub fn eigenvalues(&self) -> Vec<f64> {
        if self.strings.len() == 1 && self.strings[0].is_identity() {
            vec![self.weights[0]]
        } else {
            vec![-1.0, 1.0]
        }
    }
}

/// `e^{iθG} H e^{-iθG}` for an involutory generator.
///
/// Single strings act term-wise: commuting terms pass through and
/// anticommuting ones take the one-commutator form with `(cos 2θ, ½ sin 2θ)`.
/// Anticommuting sums use the three-term form with `(1, ½ sin 2θ, ½ sin²θ)`
/// on the whole operator.
pub fn pauli_generator_transform(g: &InvolutoryGenerator, h: &PauliSum, theta: f64) -> Result<PauliSum> {
    if g.n_qubits() != h.n_qubits() {
        return Err(Error::DimensionMismatch {
            left: g.n_qubits(),
            right: h.n_qubits(),
        });
    }
    match g.kind {
        InvolutoryKind::SinglePauli => {
            let p = &g.strings[0];
            let c = solve_vandermonde(&[-2.0, 2.0], theta)?.coefficients;
            let mut out = PauliSum::zero(h.n_qubits());
            let mut anti = PauliSum::zero(h.n_qubits());
            for (s, coeff) in h.terms() {
                if p.commutes(s)? {
                    out.add_term(s.clone(), *coeff);
                } else {
                    anti.add_term(s.clone(), *coeff);
                }
            }
            let ad = ad_i(&g.body, &anti)?;
            out.axpy(Complex64::new(c[0], 0.0), &anti)?
                .axpy(Complex64::new(c[1], 0.0), &ad)
        }
        InvolutoryKind::AnticommutingSum => {
            let c = solve_vandermonde(&[-2.0, 0.0, 2.0], theta)?.coefficients;
            let ad1 = ad_i(&g.body, h)?;
            let ad2 = ad_i(&g.body, &ad1)?;
            h.scale(Complex64::new(c[0], 0.0))
                .axpy(Complex64::new(c[1], 0.0), &ad1)?
                .axpy(Complex64::new(c[2], 0.0), &ad2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(label: &str) -> PauliString {
        PauliString::from_label(label).unwrap()
    }

    fn p(label: &str, c: f64) -> PauliSum {
        PauliSum::from_label(label, c).unwrap()
    }

    #[test]
    fn commuting_term_unchanged() {
        let g = InvolutoryGenerator::single(s("ZZ"), 1.0).unwrap();
        let h = p("XX", 0.7);
        assert_eq!(pauli_generator_transform(&g, &h, 0.4).unwrap(), h);
    }

    #[test]
    fn z_on_x_eighth_turn() {
        let g = InvolutoryGenerator::single(s("Z"), 1.0).unwrap();
        let out = pauli_generator_transform(&g, &p("X", 1.0), std::f64::consts::FRAC_PI_8).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(out.max_deviation(&p("X", r).add(&p("Y", -r)).unwrap()) < 1e-14);
    }

    #[test]
    fn rejects_invalid() {
        assert!(InvolutoryGenerator::single(s("Z"), 0.5).is_err());
        assert!(InvolutoryGenerator::anticommuting(vec![(s("ZI"), 0.6), (s("IZ"), 0.8)]).is_err());
        assert!(InvolutoryGenerator::anticommuting(vec![(s("X"), 0.6), (s("Y"), 0.6)]).is_err());
        let g = InvolutoryGenerator::anticommuting(vec![(s("X"), 0.6), (s("Y"), 0.8)]).unwrap();
        assert!(g.square_residual() < 1e-14);
        assert_eq!(g.kind(), InvolutoryKind::AnticommutingSum);
    }

    #[test]
    fn from_sum_dispatch() {
        let g = InvolutoryGenerator::from_pauli_sum(&p("XZ", -1.0)).unwrap();
        assert_eq!(g.kind(), InvolutoryKind::SinglePauli);
        assert_eq!(g.weights(), &[-1.0]);
        let acp = p("XI", 0.6).add(&p("ZI", 0.8)).unwrap();
        let g = InvolutoryGenerator::from_pauli_sum(&acp).unwrap();
        assert_eq!(g.kind(), InvolutoryKind::AnticommutingSum);
        assert!(InvolutoryGenerator::from_pauli_sum(&PauliSum::zero(2)).is_err());
    }
}

//! Unitary coupled-cluster generators `G = -i(T - T^dag)` for a single
//! excitation string `T`, with the projectors onto the `±1` and `0`
//! eigenspaces.
//!
//! `T` is nilpotent (`T² = 0`) and a partial isometry (`T T^dag T = T`), so
//! `T^dag T` and `T T^dag` are orthogonal projectors and
//! `P_± = ½(T^dag T + T T^dag ± iT^dag ∓ iT)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::adjoint::SpectralGenerator;
use crate::error::{Error, Result};
use crate::operator::{parse_word, FermiString, FermiSum};

const HALF: Complex64 = Complex64::new(0.5, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Debug)]
pub struct UCCGenerator {
    excitation: FermiString,
    sign: f64,
    t: FermiSum,
    generator: FermiSum,
    p_plus: FermiSum,
    p_minus: FermiSum,
    p_zero: FermiSum,
    p_g: FermiSum,
}

/// Residuals of the projector algebra, each a max coefficient deviation of a
/// normal-ordered identity.
#[derive(Clone, Debug, Default, Serialize)]
pub struct UccInvariants {
    pub nilpotency: f64,
    pub partial_isometry: f64,
    pub idempotency: f64,
    pub orthogonality: f64,
    pub completeness: f64,
    pub generator_split: f64,
    pub generator_kills_p0: f64,
}

impl UccInvariants {
    pub fn max(&self) -> f64 {
        [
            self.nilpotency,
            self.partial_isometry,
            self.idempotency,
            self.orthogonality,
            self.completeness,
            self.generator_split,
            self.generator_kills_p0,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Strict `T = a_A^dag a_B` with `A`, `B` disjoint, equal-sized and nonempty.
pub fn build_ucc(a: &[usize], b: &[usize]) -> Result<UCCGenerator> {
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::InvalidGenerator(format!(
            "index sets {a:?} and {b:?} must be nonempty and of equal size"
        )));
    }
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidGenerator(format!(
            "index sets {a:?} and {b:?} overlap or repeat an index"
        )));
    }
    let (s, sign) = FermiString::excitation(a, b)?;
    UCCGenerator::with_sign(s, sign, all[all.len() - 1] + 1)
}

impl UCCGenerator {
    /// `T = s` for a canonical particle-conserving string that is not a pure
    /// product of occupation operators. Number-dressed strings such as
    /// `a2^ a1^ a2 a0` are accepted.
    pub fn new(excitation: FermiString, n_orbitals: usize) -> Result<Self> {
        Self::with_sign(excitation, 1.0, n_orbitals)
    }

    /// Parses a ladder word such as `"3^ 2^ 1 0"`; `T` is the word itself, so a
    /// sign from normal ordering is kept.
    pub fn from_word(text: &str, n_orbitals: Option<usize>) -> Result<Self> {
        let word = parse_word(text)?;
        let max = word.iter().map(|op| op.index).max().unwrap_or(0);
        let n = n_orbitals.unwrap_or(max + 1);
        let sum = FermiSum::from_word(n, &word, Complex64::new(1.0, 0.0))?;
        let mut terms = sum.terms();
        match (terms.next(), terms.next()) {
            (Some((s, c)), None) if (c.norm() - 1.0).abs() < 1e-12 && c.im == 0.0 => {
                Self::with_sign(s.clone(), c.re, n)
            }
            _ => Err(Error::InvalidGenerator(format!(
                "'{text}' does not normal-order to a single string"
            ))),
        }
    }

    fn with_sign(excitation: FermiString, sign: f64, n_orbitals: usize) -> Result<Self> {
        if excitation.creators().len() != excitation.annihilators().len() {
            return Err(Error::InvalidGenerator(format!(
                "{excitation} does not conserve particle number"
            )));
        }
        if excitation.is_number_product() {
            return Err(Error::InvalidGenerator(format!(
                "{excitation} is a product of occupation operators"
            )));
        }
        let t = FermiSum::from_string(n_orbitals, excitation.clone(), Complex64::new(sign, 0.0))
            .with_orbitals(n_orbitals)?;
        let td = t.dagger();
        let generator = t.sub(&td)?.scale(-I);
        let tdt = td.mul(&t)?;
        let ttd = t.mul(&td)?;
        let p_g = tdt.add(&ttd)?;
        // i T^dag - i T = G
        let p_plus = p_g.add(&generator)?.scale(HALF);
        let p_minus = p_g.sub(&generator)?.scale(HALF);
        let p_zero = FermiSum::identity(n_orbitals).sub(&p_g)?;
        Ok(Self {
            excitation,
            sign,
            t,
            generator,
            p_plus,
            p_minus,
            p_zero,
            p_g,
        })
    }

    /// Same generator on a larger orbital register.
    pub fn with_orbitals(&self, n_orbitals: usize) -> Result<Self> {
        Self::with_sign(self.excitation.clone(), self.sign, n_orbitals)
    }

    pub fn excitation(&self) -> &FermiString {
        &self.excitation
    }

    /// `±1` relating `T` to its canonical string.
    pub fn sign(&self) -> f64 {
        self.sign
    }

    pub fn n_orbitals(&self) -> usize {
        self.t.n_orbitals()
    }

    pub fn t(&self) -> &FermiSum {
        &self.t
    }

    pub fn generator(&self) -> &FermiSum {
        &self.generator
    }

    pub fn p_plus(&self) -> &FermiSum {
        &self.p_plus
    }

    pub fn p_minus(&self) -> &FermiSum {
        &self.p_minus
    }

    pub fn p_zero(&self) -> &FermiSum {
        &self.p_zero
    }

    pub fn p_g(&self) -> &FermiSum {
        &self.p_g
    }

    pub fn eigenvalues(&self) -> [f64; 3] {
        [-1.0, 0.0, 1.0]
    }

    pub fn spectral(&self) -> SpectralGenerator<FermiSum> {
        SpectralGenerator::new(self.generator.clone(), &self.eigenvalues())
            .expect("UCC generator is Hermitian")
    }

    /// Checks every projector identity in normal-ordered form.
    pub fn invariants(&self) -> Result<UccInvariants> {
        let n = self.n_orbitals();
        let zero = FermiSum::zero(n);
        let t = &self.t;
        let td = t.dagger();
        let projectors = [&self.p_plus, &self.p_minus, &self.p_zero];
        let mut idempotency: f64 = 0.0;
        let mut orthogonality: f64 = 0.0;
        for (i, a) in projectors.iter().enumerate() {
            for (j, b) in projectors.iter().enumerate() {
                let prod = a.mul(b)?;
                if i == j {
                    idempotency = idempotency.max(prod.max_deviation(a));
                } else {
                    orthogonality = orthogonality.max(prod.max_deviation(&zero));
                }
            }
        }
        let sum = self.p_plus.add(&self.p_minus)?.add(&self.p_zero)?;
        Ok(UccInvariants {
            nilpotency: t.mul(t)?.max_deviation(&zero),
            partial_isometry: t.mul(&td)?.mul(t)?.max_deviation(t),
            idempotency,
            orthogonality,
            completeness: sum.max_deviation(&FermiSum::identity(n)),
            generator_split: self
                .p_plus
                .sub(&self.p_minus)?
                .max_deviation(&self.generator),
            generator_kills_p0: self.generator.mul(&self.p_zero)?.max_deviation(&zero),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_rejects_bad_sets() {
        assert!(build_ucc(&[1], &[1]).is_err());
        assert!(build_ucc(&[1, 2], &[0]).is_err());
        assert!(build_ucc(&[], &[]).is_err());
        assert!(build_ucc(&[2, 2], &[0, 1]).is_err());
    }

    #[test]
    fn singles_and_doubles_invariants() {
        for (a, b) in [(vec![1], vec![0]), (vec![2, 3], vec![0, 1]), (vec![0, 3], vec![1, 2])] {
            let g = build_ucc(&a, &b).unwrap();
            assert!(g.invariants().unwrap().max() < 1e-12);
        }
    }

    #[test]
    fn number_dressed_word() {
        let g = UCCGenerator::from_word("a2^ a1^ a2 a0", None).unwrap();
        assert_eq!(g.sign(), -1.0);
        assert_eq!(g.excitation().creators(), &[1, 2]);
        assert_eq!(g.n_orbitals(), 3);
        assert!(g.invariants().unwrap().max() < 1e-12);
    }

    #[test]
    fn rejects_number_products_and_nonconserving() {
        assert!(UCCGenerator::from_word("1^ 1", None).is_err());
        assert!(UCCGenerator::from_word("1^ 2^ 0", None).is_err());
        assert!(UCCGenerator::from_word("1^ 1^ 0 2", None).is_err());
    }
}

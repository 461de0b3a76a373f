//! Pauli strings in symplectic (x, z) form and sparse sums of them.
//!
//! A string stores one x-bit and one z-bit per qubit packed into `u64` words,
//! plus an exact power of `i`. The single-qubit factor is `I` for `(0,0)`,
//! `X` for `(1,0)`, `Z` for `(0,1)` and the Hermitian `Y` for `(1,1)`.
//! Labels are written qubit 0 first: `"XIZ"` is `X` on qubit 0 and `Z` on qubit 2.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;

use super::text::{content_lines, format_complex, parse_complex};
use super::DROP_TOLERANCE;
use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(n_qubits: usize) -> usize {
    n_qubits.div_ceil(WORD)
}

fn popcount(words: impl Iterator<Item = u64>) -> u32 {
    words.map(u64::count_ones).sum()
}

/// Powers of `i` indexed by the quarter phase.
pub(crate) const I_POWERS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n_qubits: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        let w = words_for(n_qubits);
        Self {
            n_qubits,
            x: vec![0; w],
            z: vec![0; w],
            phase: 0,
        }
    }

    /// Builds a string from a label over `{I, X, Y, Z}`, qubit 0 first.
    pub fn from_label(label: &str) -> Result<Self> {
        let chars: Vec<char> = label.chars().collect();
        let mut s = Self::identity(chars.len());
        for (q, c) in chars.into_iter().enumerate() {
            s.set(q, c)?;
        }
        Ok(s)
    }

    /// Single-qubit Pauli `c` on qubit `q` of an `n`-qubit register.
    pub fn single(n_qubits: usize, q: usize, c: char) -> Result<Self> {
        let mut s = Self::identity(n_qubits);
        s.set(q, c)?;
        Ok(s)
    }

    pub fn set(&mut self, q: usize, c: char) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::IndexOutOfRange {
                index: q,
                n_orbitals: self.n_qubits,
            });
        }
        let (xb, zb) = match c.to_ascii_uppercase() {
            'I' => (false, false),
            'X' => (true, false),
            'Y' => (true, true),
            'Z' => (false, true),
            other => {
                return Err(Error::InvalidInput(format!("unknown Pauli letter '{other}'")));
            }
        };
        let (w, b) = (q / WORD, q % WORD);
        let mask = 1u64 << b;
        self.x[w] = (self.x[w] & !mask) | if xb { mask } else { 0 };
        self.z[w] = (self.z[w] & !mask) | if zb { mask } else { 0 };
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    /// Power of `i` carried by the string, in `0..4`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn phase_factor(&self) -> Complex64 {
        I_POWERS[self.phase as usize]
    }

    pub fn without_phase(&self) -> Self {
        Self {
            phase: 0,
            ..self.clone()
        }
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    pub fn letter(&self, q: usize) -> char {
        let (w, b) = (q / WORD, q % WORD);
        match ((self.x[w] >> b) & 1, (self.z[w] >> b) & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (1, 1) => 'Y',
            _ => 'Z',
        }
    }

    pub fn label(&self) -> String {
        (0..self.n_qubits).map(|q| self.letter(q)).collect()
    }

    pub fn weight(&self) -> usize {
        popcount(self.x.iter().zip(&self.z).map(|(x, z)| x | z)) as usize
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(())
    }

    /// Exact group product, phase tracked as a power of `i`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        // With P = i^{x.z} X^x Z^z, the product picks up (-1)^{z1.x2} from
        // moving Z^{z1} past X^{x2}, and the Y-bookkeeping i^{x.z} is redone.
        let x: Vec<u64> = self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect();
        let z: Vec<u64> = self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect();
        let y1 = popcount(self.x.iter().zip(&self.z).map(|(a, b)| a & b));
        let y2 = popcount(other.x.iter().zip(&other.z).map(|(a, b)| a & b));
        let y3 = popcount(x.iter().zip(&z).map(|(a, b)| a & b));
        let cross = popcount(self.z.iter().zip(&other.x).map(|(a, b)| a & b));
        let phase = (self.phase as i64 + other.phase as i64 + y1 as i64 + y2 as i64
            + 2 * cross as i64
            - y3 as i64)
            .rem_euclid(4) as u8;
        Self {
            n_qubits: self.n_qubits,
            x,
            z,
            phase,
        }
    }

    /// True iff the symplectic form `<a.x, b.z> + <a.z, b.x>` is even.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_dims(other)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        let form = popcount(
            (0..self.x.len()).map(|w| (self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])),
        );
        form % 2 == 0
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.phase as usize];
        write!(f, "{prefix}{}", self.label())
    }
}

/// Sparse linear combination of phase-free Pauli strings.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self::from_string(PauliString::identity(n_qubits), Complex64::new(1.0, 0.0))
    }

    /// `coeff * s`, with the phase of `s` folded into the coefficient.
    pub fn from_string(s: PauliString, coeff: Complex64) -> Self {
        let mut out = Self::zero(s.n_qubits);
        out.add_term(s, coeff);
        out
    }

    pub fn from_label(label: &str, coeff: f64) -> Result<Self> {
        Ok(Self::from_string(
            PauliString::from_label(label)?,
            Complex64::new(coeff, 0.0),
        ))
    }

    pub fn from_terms<'a>(
        n_qubits: usize,
        terms: impl IntoIterator<Item = (&'a str, Complex64)>,
    ) -> Result<Self> {
        let mut out = Self::zero(n_qubits);
        for (label, c) in terms {
            let s = PauliString::from_label(label)?;
            if s.n_qubits != n_qubits {
                return Err(Error::DimensionMismatch {
                    left: n_qubits,
                    right: s.n_qubits,
                });
            }
            out.add_term(s, c);
        }
        Ok(out)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &PauliString) -> Complex64 {
        self.terms
            .get(&s.without_phase())
            .map(|c| c * s.phase_factor().conj())
            .unwrap_or_default()
    }

    /// Adds `coeff * s`; the drop tolerance is applied to the touched entry.
    pub fn add_term(&mut self, s: PauliString, coeff: Complex64) {
        assert_eq!(s.n_qubits, self.n_qubits, "qubit count mismatch");
        let c = coeff * s.phase_factor();
        let key = s.without_phase();
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += c;
        if entry.norm() < DROP_TOLERANCE {
            self.terms.remove(&key);
        }
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(())
    }

    fn from_accumulator(n_qubits: usize, acc: HashMap<PauliString, Complex64>) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(_, c)| c.norm() >= DROP_TOLERANCE)
            .collect();
        Self { n_qubits, terms }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: Complex64, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), alpha * c);
        }
        Ok(out)
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(s, c)| (s.clone(), c * alpha))
            .filter(|(_, c)| c.norm() >= DROP_TOLERANCE)
            .collect();
        Self {
            n_qubits: self.n_qubits,
            terms,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut acc: HashMap<PauliString, Complex64> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let p = a.mul_unchecked(b);
                *acc.entry(p.without_phase()).or_default() += ca * cb * p.phase_factor();
            }
        }
        Ok(Self::from_accumulator(self.n_qubits, acc))
    }

    /// Exact `[self, other]`; only anticommuting string pairs contribute.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.paired_product(other, false)
    }

    /// Exact `{self, other}`; only commuting string pairs contribute.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.paired_product(other, true)
    }

    fn paired_product(&self, other: &Self, want_commuting: bool) -> Result<Self> {
        self.check_dims(other)?;
        let mut acc: HashMap<PauliString, Complex64> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.commutes_unchecked(b) != want_commuting {
                    continue;
                }
                let p = a.mul_unchecked(b);
                *acc.entry(p.without_phase()).or_default() += 2.0 * ca * cb * p.phase_factor();
            }
        }
        Ok(Self::from_accumulator(self.n_qubits, acc))
    }

    /// 2-norm of the coefficient vector, i.e. `||A||_F / 2^{n/2}`.
    pub fn frobenius_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Normalized Hilbert-Schmidt inner product `Tr(A^dag B) / 2^n`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let (small, large, conj_small) = if self.len() <= other.len() {
            (self, other, true)
        } else {
            (other, self, false)
        };
        let mut acc = Complex64::default();
        for (s, c) in &small.terms {
            if let Some(d) = large.terms.get(s) {
                acc += if conj_small { c.conj() * d } else { d.conj() * c };
            }
        }
        acc
    }

    /// Hermitian conjugate; phase-free strings are Hermitian.
    pub fn dagger(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c.conj())).collect(),
        }
    }

    /// Largest `|c - conj(c)|` over the stored coefficients.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.terms
            .values()
            .map(|c| 2.0 * c.im.abs())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Largest coefficient difference against `other`.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        let mut keys: Vec<&PauliString> = self.terms.keys().collect();
        keys.extend(other.terms.keys());
        keys.into_iter()
            .map(|k| {
                let a = self.terms.get(k).copied().unwrap_or_default();
                let b = other.terms.get(k).copied().unwrap_or_default();
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Parses the `<coeff> <label>` line format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n_qubits = None;
        let mut parsed = Vec::new();
        for (line, content) in content_lines(text) {
            let mut parts = content.split_whitespace();
            let (Some(c), Some(label), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::parse(line, "expected '<coeff> <pauli string>'"));
            };
            let coeff =
                parse_complex(c).ok_or_else(|| Error::parse(line, format!("bad coefficient '{c}'")))?;
            let s = PauliString::from_label(label).map_err(|e| Error::parse(line, e.to_string()))?;
            match n_qubits {
                None => n_qubits = Some(s.n_qubits),
                Some(n) if n != s.n_qubits => {
                    return Err(Error::parse(line, format!("expected {n} qubits, got {}", s.n_qubits)));
                }
                _ => {}
            }
            parsed.push((s, coeff));
        }
        let n = n_qubits.ok_or_else(|| Error::parse(0, "no terms"))?;
        let mut out = Self::zero(n);
        for (s, c) in parsed {
            out.add_term(s, c);
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, c) in &self.terms {
            writeln!(f, "{} {}", format_complex(*c), s.label())?;
        }
        Ok(())
    }
}

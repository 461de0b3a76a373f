//! Normal-ordered fermionic strings and sums.
//!
//! Canonical form: creation operators first with ascending indices, then
//! annihilation operators with descending indices. For `|A| = |B|` this makes
//! `a_A^dag a_B` (with `a_A` the ascending product) canonical without a sign.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;

use super::text::{content_lines, format_complex, parse_complex};
use super::DROP_TOLERANCE;
use crate::error::{Error, Result};

/// One ladder operator: spin-orbital index and whether it is a creator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LadderOp {
    pub index: usize,
    pub dagger: bool,
}

impl LadderOp {
    pub fn create(index: usize) -> Self {
        Self { index, dagger: true }
    }

    pub fn annihilate(index: usize) -> Self {
        Self {
            index,
            dagger: false,
        }
    }

    fn precedes(self, other: Self) -> bool {
        match (self.dagger, other.dagger) {
            (true, false) => true,
            (false, true) => false,
            (true, true) => self.index < other.index,
            (false, false) => self.index > other.index,
        }
    }
}

/// How a string acts on one spin orbital.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalAction {
    /// `a_p^dag`: requires the orbital empty, leaves it filled.
    Create,
    /// `a_p`: requires it filled, leaves it empty.
    Annihilate,
    /// `n_p`: requires it filled, leaves it filled.
    Number,
}

impl LocalAction {
    /// Occupation required on input and produced on output.
    pub fn occupations(self) -> (bool, bool) {
        match self {
            LocalAction::Create => (false, true),
            LocalAction::Annihilate => (true, false),
            LocalAction::Number => (true, true),
        }
    }

    pub fn dagger(self) -> Self {
        match self {
            LocalAction::Create => LocalAction::Annihilate,
            LocalAction::Annihilate => LocalAction::Create,
            LocalAction::Number => LocalAction::Number,
        }
    }
}

/// A canonical normal-ordered product of ladder operators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FermiString {
    creators: Vec<usize>,
    annihilators: Vec<usize>,
}

impl FermiString {
    pub fn identity() -> Self {
        Self {
            creators: Vec::new(),
            annihilators: Vec::new(),
        }
    }

    /// Builds a canonical string; creators must be strictly ascending and
    /// annihilators strictly descending.
    pub fn new(creators: Vec<usize>, annihilators: Vec<usize>) -> Result<Self> {
        if !creators.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "creators {creators:?} are not strictly ascending"
            )));
        }
        if !annihilators.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput(format!(
                "annihilators {annihilators:?} are not strictly descending"
            )));
        }
        Ok(Self {
            creators,
            annihilators,
        })
    }

    /// `a_A^dag a_B` for index sets `A`, `B`, with `a_A` the ascending product.
    ///
    /// Returns the canonical string and the sign relating the two forms.
    pub fn excitation(a: &[usize], b: &[usize]) -> Result<(Self, f64)> {
        let mut word: Vec<LadderOp> = Vec::new();
        let mut a_sorted = a.to_vec();
        a_sorted.sort_unstable();
        let mut b_sorted = b.to_vec();
        b_sorted.sort_unstable();
        word.extend(a_sorted.iter().rev().map(|&p| LadderOp::create(p)));
        word.extend(b_sorted.iter().map(|&p| LadderOp::annihilate(p)));
        let terms = normal_order_word(&word);
        match terms.as_slice() {
            [(s, c)] => Ok((s.clone(), *c)),
            _ => Err(Error::InvalidInput(format!(
                "excitation a_{a:?}^dag a_{b:?} is not a single string"
            ))),
        }
    }

    pub fn creators(&self) -> &[usize] {
        &self.creators
    }

    pub fn annihilators(&self) -> &[usize] {
        &self.annihilators
    }

    pub fn len(&self) -> usize {
        self.creators.len() + self.annihilators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ops(&self) -> impl Iterator<Item = LadderOp> + '_ {
        self.creators
            .iter()
            .map(|&p| LadderOp::create(p))
            .chain(self.annihilators.iter().map(|&p| LadderOp::annihilate(p)))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.creators.iter().chain(&self.annihilators).copied().max()
    }

    /// Hermitian conjugate; canonical forms map to canonical forms with no sign.
    pub fn dagger(&self) -> Self {
        Self {
            creators: self.annihilators.iter().rev().copied().collect(),
            annihilators: self.creators.iter().rev().copied().collect(),
        }
    }

    /// Per-orbital action, sorted by orbital index.
    pub fn local_actions(&self) -> BTreeMap<usize, LocalAction> {
        let mut out = BTreeMap::new();
        for &p in &self.creators {
            out.insert(p, LocalAction::Create);
        }
        for &p in &self.annihilators {
            out.entry(p)
                .and_modify(|a| *a = LocalAction::Number)
                .or_insert(LocalAction::Annihilate);
        }
        out
    }

    /// True iff the string is a product of occupation operators `n_p` (or identity).
    pub fn is_number_product(&self) -> bool {
        self.creators.len() == self.annihilators.len()
            && self.creators.iter().eq(self.annihilators.iter().rev())
    }

    pub fn support(&self) -> Vec<usize> {
        self.local_actions().into_keys().collect()
    }

    pub fn to_word(&self) -> Vec<LadderOp> {
        self.ops().collect()
    }
}

impl Ord for FermiString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.creators.cmp(&other.creators))
            .then_with(|| self.annihilators.cmp(&other.annihilators))
    }
}

impl PartialOrd for FermiString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FermiString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ops()
            .map(|op| format!("a{}{}", op.index, if op.dagger { "^" } else { "" }))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Normal-orders an arbitrary product of ladder operators using
/// `{a_p, a_q^dag} = delta_pq` and `{a_p, a_q} = 0`.
pub fn normal_order_word(word: &[LadderOp]) -> Vec<(FermiString, f64)> {
    let mut acc: HashMap<FermiString, f64> = HashMap::new();
    let mut stack: Vec<(Vec<LadderOp>, f64)> = vec![(word.to_vec(), 1.0)];
    'outer: while let Some((mut w, mut sign)) = stack.pop() {
        // bubble pass; branches push the contraction term and continue
        loop {
            let mut swapped = false;
            for i in 0..w.len().saturating_sub(1) {
                let (a, b) = (w[i], w[i + 1]);
                if a == b {
                    continue 'outer;
                }
                if a.precedes(b) {
                    continue;
                }
                if !a.dagger && b.dagger && a.index == b.index {
                    let mut contracted = w.clone();
                    contracted.drain(i..i + 2);
                    stack.push((contracted, sign));
                }
                w.swap(i, i + 1);
                sign = -sign;
                swapped = true;
            }
            if !swapped {
                break;
            }
        }
        let creators = w.iter().filter(|o| o.dagger).map(|o| o.index).collect();
        let annihilators = w.iter().filter(|o| !o.dagger).map(|o| o.index).collect();
        *acc.entry(FermiString {
            creators,
            annihilators,
        })
        .or_default() += sign;
    }
    let mut out: Vec<(FermiString, f64)> = acc.into_iter().filter(|(_, c)| *c != 0.0).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Linear combination of canonical fermionic strings over `n_orbitals` spin orbitals.
#[derive(Clone, Debug, PartialEq)]
pub struct FermiSum {
    n_orbitals: usize,
    terms: BTreeMap<FermiString, Complex64>,
}

impl FermiSum {
    pub fn zero(n_orbitals: usize) -> Self {
        Self {
            n_orbitals,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n_orbitals: usize) -> Self {
        Self::from_string(n_orbitals, FermiString::identity(), Complex64::new(1.0, 0.0))
    }

    pub fn from_string(n_orbitals: usize, s: FermiString, coeff: Complex64) -> Self {
        let mut out = Self::zero(n_orbitals);
        out.add_term(s, coeff);
        out
    }

    /// Normal-orders `coeff * word`.
    pub fn from_word(n_orbitals: usize, word: &[LadderOp], coeff: Complex64) -> Result<Self> {
        let mut out = Self::zero(n_orbitals);
        out.add_word(word, coeff)?;
        Ok(out)
    }

    /// `a_p^dag`.
    pub fn creation(n_orbitals: usize, p: usize) -> Self {
        Self::from_string(
            n_orbitals,
            FermiString {
                creators: vec![p],
                annihilators: vec![],
            },
            Complex64::new(1.0, 0.0),
        )
    }

    /// `a_p`.
    pub fn annihilation(n_orbitals: usize, p: usize) -> Self {
        Self::from_string(
            n_orbitals,
            FermiString {
                creators: vec![],
                annihilators: vec![p],
            },
            Complex64::new(1.0, 0.0),
        )
    }

    pub fn n_orbitals(&self) -> usize {
        self.n_orbitals
    }

    pub fn with_orbitals(mut self, n_orbitals: usize) -> Result<Self> {
        if let Some(m) = self.max_index() {
            if m >= n_orbitals {
                return Err(Error::IndexOutOfRange {
                    index: m,
                    n_orbitals,
                });
            }
        }
        self.n_orbitals = n_orbitals;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FermiString, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &FermiString) -> Complex64 {
        self.terms.get(s).copied().unwrap_or_default()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().filter_map(FermiString::max_index).max()
    }

    pub fn add_term(&mut self, s: FermiString, coeff: Complex64) {
        if let Some(m) = s.max_index() {
            assert!(m < self.n_orbitals, "index {m} out of range");
        }
        let entry = self.terms.entry(s.clone()).or_default();
        *entry += coeff;
        if entry.norm() < DROP_TOLERANCE {
            self.terms.remove(&s);
        }
    }

    pub fn add_word(&mut self, word: &[LadderOp], coeff: Complex64) -> Result<()> {
        if let Some(op) = word.iter().find(|o| o.index >= self.n_orbitals) {
            return Err(Error::IndexOutOfRange {
                index: op.index,
                n_orbitals: self.n_orbitals,
            });
        }
        for (s, sign) in normal_order_word(word) {
            self.add_term(s, coeff * sign);
        }
        Ok(())
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n_orbitals != other.n_orbitals {
            return Err(Error::DimensionMismatch {
                left: self.n_orbitals,
                right: other.n_orbitals,
            });
        }
        Ok(())
    }

    fn from_accumulator(n_orbitals: usize, acc: HashMap<FermiString, Complex64>) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(_, c)| c.norm() >= DROP_TOLERANCE)
            .collect();
        Self { n_orbitals, terms }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

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
            n_orbitals: self.n_orbitals,
            terms,
        }
    }

    /// Operator product, normal-ordered.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut acc: HashMap<FermiString, Complex64> = HashMap::new();
        let mut word = Vec::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                word.clear();
                word.extend(a.ops());
                word.extend(b.ops());
                for (s, sign) in normal_order_word(&word) {
                    *acc.entry(s).or_default() += ca * cb * sign;
                }
            }
        }
        Ok(Self::from_accumulator(self.n_orbitals, acc))
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    pub fn dagger(&self) -> Self {
        Self {
            n_orbitals: self.n_orbitals,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.dagger(), c.conj()))
                .collect(),
        }
    }

    /// Largest coefficient deviation from the Hermitian conjugate.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_deviation(&self.dagger())
    }

    pub fn max_deviation(&self, other: &Self) -> f64 {
        let mut keys: Vec<&FermiString> = self.terms.keys().collect();
        keys.extend(other.terms.keys());
        keys.into_iter()
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    /// 2-norm of the coefficient vector in the normal-ordered basis.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Parses `<coeff> a3^ a2^ a1 a0` lines; each product is normal-ordered.
    /// The orbital count is the largest index plus one unless `n_orbitals` is given.
    pub fn parse(text: &str, n_orbitals: Option<usize>) -> Result<Self> {
        let mut words = Vec::new();
        let mut max_index = None::<usize>;
        for (line, content) in content_lines(text) {
            let mut parts = content.split_whitespace();
            let c = parts.next().unwrap_or_default();
            let coeff =
                parse_complex(c).ok_or_else(|| Error::parse(line, format!("bad coefficient '{c}'")))?;
            let word = parse_word_tokens(parts).map_err(|m| Error::parse(line, m))?;
            for op in &word {
                max_index = Some(max_index.map_or(op.index, |m| m.max(op.index)));
            }
            words.push((word, coeff));
        }
        if words.is_empty() {
            return Err(Error::parse(0, "no terms"));
        }
        let n = match (n_orbitals, max_index) {
            (Some(n), Some(m)) if m >= n => {
                return Err(Error::IndexOutOfRange {
                    index: m,
                    n_orbitals: n,
                })
            }
            (Some(n), _) => n,
            (None, Some(m)) => m + 1,
            (None, None) => 1,
        };
        let mut out = Self::zero(n);
        for (w, c) in words {
            out.add_word(&w, c)?;
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Parses a ladder-operator product such as `"a3^ a2^ a1 a0"` or `"3^ 2^ 1 0"`.
pub fn parse_word(text: &str) -> Result<Vec<LadderOp>> {
    parse_word_tokens(text.split_whitespace()).map_err(|m| Error::parse(1, m))
}

fn parse_word_tokens<'a>(tokens: impl Iterator<Item = &'a str>) -> std::result::Result<Vec<LadderOp>, String> {
    tokens
        .map(|tok| {
            let (body, dagger) = match tok.strip_suffix('^') {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let body = body.strip_prefix('a').unwrap_or(body);
            body.parse::<usize>()
                .map(|index| LadderOp { index, dagger })
                .map_err(|_| format!("bad ladder operator '{tok}'"))
        })
        .collect()
}

impl fmt::Display for FermiSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, c) in &self.terms {
            if s.is_empty() {
                writeln!(f, "{}", format_complex(*c))?;
            } else {
                writeln!(f, "{} {}", format_complex(*c), s)?;
            }
        }
        Ok(())
    }
}

/// Normal-orders a list of raw `(word, coefficient)` products.
pub fn fermi_normal_order(
    n_orbitals: usize,
    products: &[(Vec<LadderOp>, Complex64)],
) -> Result<FermiSum> {
    let mut out = FermiSum::zero(n_orbitals);
    for (w, c) in products {
        out.add_word(w, *c)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn car_identity() {
        let s = FermiSum::from_word(1, &[LadderOp::annihilate(0), LadderOp::create(0)], one()).unwrap();
        let expected = FermiSum::parse("1\n-1 a0^ a0", None).unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn partial_isometry_single_mode() {
        let w = [LadderOp::create(0), LadderOp::annihilate(0), LadderOp::create(0)];
        let s = FermiSum::from_word(1, &w, one()).unwrap();
        assert_eq!(s, FermiSum::creation(1, 0));
    }

    #[test]
    fn repeated_operator_is_zero() {
        let w = [LadderOp::create(2), LadderOp::annihilate(1), LadderOp::create(2)];
        assert!(FermiSum::from_word(3, &w, one()).unwrap().is_empty());
    }

    #[test]
    fn excitation_is_canonical_without_sign() {
        let (s, sign) = FermiString::excitation(&[2, 3], &[0, 1]).unwrap();
        assert_eq!(s.creators(), &[2, 3]);
        assert_eq!(s.annihilators(), &[1, 0]);
        assert_eq!(sign, 1.0);
    }

    #[test]
    fn written_order_sign() {
        // a3^ a2^ a1 a0 = -a2^ a3^ a1 a0
        let s = FermiSum::parse("1 a3^ a2^ a1 a0", None).unwrap();
        let (canon, _) = FermiString::excitation(&[2, 3], &[0, 1]).unwrap();
        assert_eq!(s.coeff(&canon), -one());
    }

    #[test]
    fn dagger_and_number_products() {
        let s = FermiString::new(vec![1, 4], vec![3, 0]).unwrap();
        assert_eq!(s.dagger(), FermiString::new(vec![0, 3], vec![4, 1]).unwrap());
        assert!(FermiString::new(vec![1, 2], vec![2, 1]).unwrap().is_number_product());
        assert!(!s.is_number_product());
        assert!(FermiString::new(vec![2, 1], vec![]).is_err());
    }

    #[test]
    fn local_actions() {
        let s = FermiSum::parse("1 a3^ a2^ a2 a0", None).unwrap();
        let (key, _) = s.terms().next().unwrap();
        let la = key.local_actions();
        assert_eq!(la[&3], LocalAction::Create);
        assert_eq!(la[&2], LocalAction::Number);
        assert_eq!(la[&0], LocalAction::Annihilate);
    }

    #[test]
    fn text_roundtrip_and_errors() {
        let s = FermiSum::parse("0.5 a3^ a2^ a1 a0\n-0.25+1e-3j a1^ a1\n2", None).unwrap();
        let back = FermiSum::parse(&s.to_text(), Some(4)).unwrap();
        assert_eq!(back, s);
        assert!(FermiSum::parse("0.5 a3^ ab", None).is_err());
        assert!(FermiSum::parse("0.5 a7^", Some(4)).is_err());
    }
}

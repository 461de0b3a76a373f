//! Polynomials in canonical position and momentum operators with
//! `[x_i, p_j] = iħ δ_ij`, kept in x-before-p order.
//!
//! A linear generator `G = Σ_j (u_j x_j - v_j p_j) + z` spans, together with
//! the identity, a nilpotent algebra of class 2: `ad_{iG}` maps linear
//! operators to multiples of the identity, so the conjugation of each
//! `x_j`, `p_j` stops after one commutator,
//!
//! `x_j → x_j - ħ v_j`, `p_j → p_j - ħ u_j`,
//!
//! and a polynomial transforms by substitution.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::text::{content_lines, format_complex, parse_complex};

const DROP: f64 = 1e-14;

/// `Π_j x_j^{x[j]} Π_j p_j^{p[j]}` with trailing zero exponents trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    x: Vec<u32>,
    p: Vec<u32>,
}

impl Monomial {
    pub fn new(mut x: Vec<u32>, mut p: Vec<u32>) -> Self {
        while x.last() == Some(&0) {
            x.pop();
        }
        while p.last() == Some(&0) {
            p.pop();
        }
        Self { x, p }
    }

    pub fn one() -> Self {
        Self::default()
    }

    pub fn x_pow(&self, j: usize) -> u32 {
        self.x.get(j).copied().unwrap_or(0)
    }

    pub fn p_pow(&self, j: usize) -> u32 {
        self.p.get(j).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.x.iter().chain(&self.p).sum()
    }

    fn n_modes(&self) -> usize {
        self.x.len().max(self.p.len())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, exps) in [("x", &self.x), ("p", &self.p)] {
            for (j, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("{name}{j}")),
                    _ => parts.push(format!("{name}{j}^{e}")),
                }
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeylPolynomial {
    hbar: f64,
    terms: BTreeMap<Monomial, Complex64>,
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

fn factorial(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * f64::from(i))
}

impl WeylPolynomial {
    pub fn zero(hbar: f64) -> Self {
        Self {
            hbar,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(hbar: f64, c: Complex64) -> Self {
        let mut out = Self::zero(hbar);
        out.add_term(Monomial::one(), c);
        out
    }

    pub fn monomial(hbar: f64, m: Monomial, c: Complex64) -> Self {
        let mut out = Self::zero(hbar);
        out.add_term(m, c);
        out
    }

    /// `x_j`.
    pub fn x(hbar: f64, j: usize) -> Self {
        let mut e = vec![0; j + 1];
        e[j] = 1;
        Self::monomial(hbar, Monomial::new(e, vec![]), Complex64::new(1.0, 0.0))
    }

    /// `p_j`.
    pub fn p(hbar: f64, j: usize) -> Self {
        let mut e = vec![0; j + 1];
        e[j] = 1;
        Self::monomial(hbar, Monomial::new(vec![], e), Complex64::new(1.0, 0.0))
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Complex64) {
        let e = self.terms.entry(m.clone()).or_default();
        *e += c;
        if e.norm() < DROP {
            self.terms.remove(&m);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.hbar != other.hbar {
            return Err(Error::InvalidInput(format!(
                "hbar mismatch: {} vs {}",
                self.hbar, other.hbar
            )));
        }
        Ok(())
    }

    pub fn axpy(&self, alpha: Complex64, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), alpha * c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        let mut out = Self::zero(self.hbar);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), alpha * c);
        }
        out
    }

    /// Product, reordered with `p^a x^b = Σ_k C(a,k) C(b,k) k! (-iħ)^k x^{b-k} p^{a-k}`
    /// mode by mode.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let minus_i_hbar = Complex64::new(0.0, -self.hbar);
        let mut out = Self::zero(self.hbar);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let modes = m1.n_modes().max(m2.n_modes());
                let mut partial: Vec<(Complex64, Vec<u32>, Vec<u32>)> = vec![(
                    c1 * c2,
                    (0..modes).map(|j| m1.x_pow(j)).collect(),
                    vec![0; modes],
                )];
                for j in 0..modes {
                    let (a, b) = (m1.p_pow(j), m2.x_pow(j));
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let mut next = Vec::with_capacity(partial.len() * (a.min(b) as usize + 1));
                    for (c, x, p) in &partial {
                        for k in 0..=a.min(b) {
                            let w = binomial(a, k) * binomial(b, k) * factorial(k);
                            let mut x = x.clone();
                            let mut p = p.clone();
                            x[j] += b - k;
                            p[j] += a - k;
                            next.push((c * w * minus_i_hbar.powu(k), x, p));
                        }
                    }
                    partial = next;
                }
                for (c, x, mut p) in partial {
                    for (j, e) in p.iter_mut().enumerate() {
                        *e += m2.p_pow(j);
                    }
                    out.add_term(Monomial::new(x, p), c);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn max_deviation(&self, other: &Self) -> f64 {
        let mut keys: Vec<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .map(|m| (self.coeff(m) - other.coeff(m)).norm())
            .fold(0.0, f64::max)
    }

    /// Substitutes `x_j → x_j + dx[j]`, `p_j → p_j + dp[j]` for scalar shifts.
    pub fn shift(&self, dx: &[f64], dp: &[f64]) -> Self {
        let mut out = Self::zero(self.hbar);
        for (m, c) in &self.terms {
            let modes = m.n_modes();
            let mut partial: Vec<(Complex64, Vec<u32>, Vec<u32>)> =
                vec![(*c, vec![0; modes], vec![0; modes])];
            for j in 0..modes {
                for (pow, delta, is_x) in [
                    (m.x_pow(j), dx.get(j).copied().unwrap_or(0.0), true),
                    (m.p_pow(j), dp.get(j).copied().unwrap_or(0.0), false),
                ] {
                    if pow == 0 {
                        continue;
                    }
                    let mut next = Vec::new();
                    for (c, x, p) in &partial {
                        for k in 0..=pow {
                            let w = binomial(pow, k) * delta.powi((pow - k) as i32);
                            if w == 0.0 {
                                continue;
                            }
                            let (mut x, mut p) = (x.clone(), p.clone());
                            if is_x {
                                x[j] += k;
                            } else {
                                p[j] += k;
                            }
                            next.push((c * w, x, p));
                        }
                    }
                    partial = next;
                }
            }
            for (c, x, p) in partial {
                out.add_term(Monomial::new(x, p), c);
            }
        }
        out
    }

    /// Parses `coeff x0^2 p1` lines; factors may come in any order and are
    /// reordered exactly.
    pub fn parse(text: &str, hbar: f64) -> Result<Self> {
        let mut out = Self::zero(hbar);
        for (line, content) in content_lines(text) {
            let mut parts = content.split_whitespace();
            let c = parts.next().unwrap_or_default();
            let coeff = parse_complex(c).ok_or_else(|| Error::parse(line, format!("bad coefficient '{c}'")))?;
            let mut term = Self::constant(hbar, coeff);
            for tok in parts {
                let (base, pow) = match tok.split_once('^') {
                    Some((b, e)) => (
                        b,
                        e.parse::<u32>()
                            .map_err(|_| Error::parse(line, format!("bad exponent in '{tok}'")))?,
                    ),
                    None => (tok, 1),
                };
                let (kind, idx) = base.split_at(1.min(base.len()));
                let j: usize = idx
                    .parse()
                    .map_err(|_| Error::parse(line, format!("bad factor '{tok}'")))?;
                let factor = match kind {
                    "x" => Self::x(hbar, j),
                    "p" => Self::p(hbar, j),
                    _ => return Err(Error::parse(line, format!("bad factor '{tok}'"))),
                };
                for _ in 0..pow {
                    term = term.mul(&factor)?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for WeylPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, c) in &self.terms {
            if m.degree() == 0 {
                writeln!(f, "{}", format_complex(*c))?;
            } else {
                writeln!(f, "{} {}", format_complex(*c), m)?;
            }
        }
        Ok(())
    }
}

/// `G = Σ_j (u_j x_j - v_j p_j) + z`.
pub fn linear_generator(u: &[f64], v: &[f64], z: f64, hbar: f64) -> WeylPolynomial {
    let mut g = WeylPolynomial::constant(hbar, Complex64::new(z, 0.0));
    for (j, &uj) in u.iter().enumerate() {
        g = g.axpy(Complex64::new(uj, 0.0), &WeylPolynomial::x(hbar, j)).expect("same hbar");
    }
    for (j, &vj) in v.iter().enumerate() {
        g = g.axpy(Complex64::new(-vj, 0.0), &WeylPolynomial::p(hbar, j)).expect("same hbar");
    }
    g
}

/// `e^{iG} P e^{-iG}` for the linear generator `(u, v, z)`, by substituting
/// `x_j → x_j - ħ v_j` and `p_j → p_j - ħ u_j`.
pub fn heisenberg_displace(u: &[f64], v: &[f64], _z: f64, poly: &WeylPolynomial) -> WeylPolynomial {
    let h = poly.hbar();
    let dx: Vec<f64> = v.iter().map(|vj| -h * vj).collect();
    let dp: Vec<f64> = u.iter().map(|uj| -h * uj).collect();
    poly.shift(&dx, &dp)
}

/// `Σ_{k ≤ deg P} ad_{iG}^k(P) / k!`, exact for linear `G` since each
/// commutator lowers the degree by one.
pub fn conjugate_by_series(g: &WeylPolynomial, poly: &WeylPolynomial) -> Result<WeylPolynomial> {
    let i = Complex64::new(0.0, 1.0);
    let mut term = poly.clone();
    let mut out = poly.clone();
    for k in 1..=poly.degree() + 1 {
        term = g.commutator(&term)?.scale(i / f64::from(k));
        if term.is_empty() {
            break;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

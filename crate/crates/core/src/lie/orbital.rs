//! Orbital rotations `V = exp(i Σ M_pq a_p^dag a_q)` and their action on
//! one- and two-body tensors.
//!
//! Ladder operators transform linearly, `V a_p^dag V^dag = Σ_q U_qp a_q^dag`
//! with `U = e^{iM}`, so an electronic Hamiltonian keeps its form with
//! `h' = U h U^dag` and `g'_{pqrs} = Σ U_pa U*_qb U_rc U*_sd g_{abcd}`.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_exp_i, max_abs};
use crate::operator::text::{content_lines, format_complex, parse_complex};
use crate::operator::{FermiSum, LadderOp};

pub type ComplexMatrix = DMatrix<Complex64>;

const HERMITIAN_TOL: f64 = 1e-12;
const UNITARY_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct OrbitalRotation {
    generator: Option<ComplexMatrix>,
    unitary: ComplexMatrix,
}

impl OrbitalRotation {
    /// `U = e^{iM}` for Hermitian `M`.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                left: m.nrows(),
                right: m.ncols(),
            });
        }
        let deviation = max_abs(&(&m - m.adjoint()));
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let unitary = if m.iter().all(|z| *z == Complex64::default()) {
            ComplexMatrix::identity(m.nrows(), m.ncols())
        } else {
            hermitian_exp_i(&m, 1.0)
        };
        let rot = Self {
            generator: Some(m),
            unitary,
        };
        rot.check_unitary()?;
        Ok(rot)
    }

    /// Wraps a unitary directly; the generator is then unknown.
    pub fn from_unitary(unitary: ComplexMatrix) -> Result<Self> {
        let rot = Self {
            generator: None,
            unitary,
        };
        rot.check_unitary()?;
        Ok(rot)
    }

    fn check_unitary(&self) -> Result<()> {
        let n = self.unitary.nrows();
        let r = self.unitarity_residual();
        if !self.unitary.is_square() || r > UNITARY_TOL {
            return Err(Error::InvalidInput(format!(
                "rotation of size {n} is not unitary (residual {r:.3e})"
            )));
        }
        Ok(())
    }

    pub fn n_orbitals(&self) -> usize {
        self.unitary.nrows()
    }

    pub fn generator(&self) -> Option<&ComplexMatrix> {
        self.generator.as_ref()
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    /// `max |U U^dag - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.unitary.nrows();
        max_abs(&(&self.unitary * self.unitary.adjoint() - ComplexMatrix::identity(n, n)))
    }

    /// Rotation applying `self` first and then `after`: `U = U_after U_self`.
    pub fn then(&self, after: &OrbitalRotation) -> Result<Self> {
        if after.n_orbitals() != self.n_orbitals() {
            return Err(Error::DimensionMismatch {
                left: self.n_orbitals(),
                right: after.n_orbitals(),
            });
        }
        Self::from_unitary(&after.unitary * &self.unitary)
    }

    /// `Σ M_pq a_p^dag a_q`; needs the generator.
    pub fn generator_operator(&self) -> Result<FermiSum> {
        let m = self
            .generator
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("rotation has no stored generator".into()))?;
        let n = m.nrows();
        let mut out = FermiSum::zero(n);
        for p in 0..n {
            for q in 0..n {
                out.add_word(&[LadderOp::create(p), LadderOp::annihilate(q)], m[(p, q)])?;
            }
        }
        Ok(out)
    }

    /// The `N² × N²` adjoint matrix `[U]_{(rs)(pq)} = U_rp U*_sq`, indexed
    /// `r * N + s`, `p * N + q`.
    pub fn compound_adjoint(&self) -> ComplexMatrix {
        let n = self.n_orbitals();
        let u = &self.unitary;
        ComplexMatrix::from_fn(n * n, n * n, |rs, pq| {
            let (r, s) = (rs / n, rs % n);
            let (p, q) = (pq / n, pq % n);
            u[(r, p)] * u[(s, q)].conj()
        })
    }
}

/// `V a_p^dag V^dag = Σ_q U_qp a_q^dag`.
pub fn rotate_creation(rot: &OrbitalRotation, p: usize) -> Result<FermiSum> {
    let n = rot.n_orbitals();
    if p >= n {
        return Err(Error::IndexOutOfRange {
            index: p,
            n_orbitals: n,
        });
    }
    let mut out = FermiSum::zero(n);
    for q in 0..n {
        out.add_word(&[LadderOp::create(q)], rot.unitary[(q, p)])?;
    }
    Ok(out)
}

/// `V a_p V^dag = Σ_q U*_qp a_q`.
pub fn rotate_annihilation(rot: &OrbitalRotation, p: usize) -> Result<FermiSum> {
    Ok(rotate_creation(rot, p)?.dagger())
}

/// One-body `h`, two-body `g` and a constant, for
/// `c + Σ h_pq a_p^dag a_q + Σ g_pqrs a_p^dag a_q a_r^dag a_s`.
#[derive(Clone, Debug, PartialEq)]
pub struct ElectronicTensors {
    pub constant: Complex64,
    pub h: ComplexMatrix,
    /// Row-major `g[((p * N + q) * N + r) * N + s]`.
    pub g: Vec<Complex64>,
}

impl ElectronicTensors {
    pub fn zeros(n: usize) -> Self {
        Self {
            constant: Complex64::default(),
            h: ComplexMatrix::zeros(n, n),
            g: vec![Complex64::default(); n * n * n * n],
        }
    }

    pub fn new(constant: Complex64, h: ComplexMatrix, g: Vec<Complex64>) -> Result<Self> {
        let n = h.nrows();
        if !h.is_square() || g.len() != n * n * n * n {
            return Err(Error::DimensionMismatch {
                left: n * n * n * n,
                right: g.len(),
            });
        }
        Ok(Self { constant, h, g })
    }

    pub fn n_orbitals(&self) -> usize {
        self.h.nrows()
    }

    fn idx(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        let n = self.n_orbitals();
        ((p * n + q) * n + r) * n + s
    }

    pub fn g(&self, p: usize, q: usize, r: usize, s: usize) -> Complex64 {
        self.g[self.idx(p, q, r, s)]
    }

    pub fn set_g(&mut self, p: usize, q: usize, r: usize, s: usize, v: Complex64) {
        let i = self.idx(p, q, r, s);
        self.g[i] = v;
    }

    /// The normal-ordered operator.
    pub fn to_fermi_sum(&self) -> Result<FermiSum> {
        let n = self.n_orbitals();
        let mut out = FermiSum::identity(n).scale(self.constant);
        for p in 0..n {
            for q in 0..n {
                let v = self.h[(p, q)];
                if v != Complex64::default() {
                    out.add_word(&[LadderOp::create(p), LadderOp::annihilate(q)], v)?;
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let v = self.g(p, q, r, s);
                        if v != Complex64::default() {
                            let word = [
                                LadderOp::create(p),
                                LadderOp::annihilate(q),
                                LadderOp::create(r),
                                LadderOp::annihilate(s),
                            ];
                            out.add_word(&word, v)?;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Hermiticity deviation of the implied operator.
    pub fn hermiticity_deviation(&self) -> Result<f64> {
        Ok(self.to_fermi_sum()?.hermiticity_deviation())
    }

    /// Parses the FCIDUMP-style format: an `&FCI NORB=N ... &END` header,
    /// then `value i j k l` lines with 1-based indices. `k = l = 0` marks a
    /// one-body entry and `0 0 0 0` the constant.
    pub fn parse_fcidump(text: &str) -> Result<Self> {
        let mut lines = content_lines(text).peekable();
        let mut norb = None;
        let mut in_header = false;
        while let Some(&(line, content)) = lines.peek() {
            let upper = content.to_ascii_uppercase();
            if upper.starts_with("&FCI") {
                in_header = true;
            }
            if !in_header {
                break;
            }
            if let Some(pos) = upper.find("NORB") {
                let rest = upper[pos + 4..].trim_start().trim_start_matches('=').trim_start();
                let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
                norb = Some(
                    digits
                        .parse::<usize>()
                        .map_err(|_| Error::parse(line, "bad NORB value"))?,
                );
            }
            lines.next();
            if upper.starts_with("&END") || upper.starts_with('/') || upper.ends_with("&END") {
                in_header = false;
                break;
            }
        }
        if in_header {
            return Err(Error::parse(0, "unterminated &FCI header"));
        }
        let n = norb.ok_or_else(|| Error::parse(1, "missing NORB in header"))?;
        let mut t = Self::zeros(n);
        for (line, content) in lines {
            let parts: Vec<&str> = content.split_whitespace().collect();
            if parts.len() != 5 {
                return Err(Error::parse(line, "expected 'value i j k l'"));
            }
            let v = parse_complex(parts[0])
                .ok_or_else(|| Error::parse(line, format!("bad value '{}'", parts[0])))?;
            let mut idx = [0usize; 4];
            for (k, tok) in parts[1..].iter().enumerate() {
                let i: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(line, format!("bad index '{tok}'")))?;
                if i > n {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        n_orbitals: n,
                    });
                }
                idx[k] = i;
            }
            match idx {
                [0, 0, 0, 0] => t.constant += v,
                [i, j, 0, 0] if i > 0 && j > 0 => t.h[(i - 1, j - 1)] += v,
                [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => {
                    let at = t.idx(i - 1, j - 1, k - 1, l - 1);
                    t.g[at] += v;
                }
                _ => return Err(Error::parse(line, "index pattern is neither 0, 2 nor 4 indices")),
            }
        }
        Ok(t)
    }

    /// Writes entries with magnitude at least `cutoff` in the same format.
    pub fn to_fcidump(&self, cutoff: f64) -> String {
        let n = self.n_orbitals();
        let mut out = format!("&FCI NORB={n}\n&END\n");
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let v = self.g(p, q, r, s);
                        if v.norm() >= cutoff && v != Complex64::default() {
                            let _ = writeln!(out, "{} {} {} {} {}", format_complex(v), p + 1, q + 1, r + 1, s + 1);
                        }
                    }
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                let v = self.h[(p, q)];
                if v.norm() >= cutoff && v != Complex64::default() {
                    let _ = writeln!(out, "{} {} {} 0 0", format_complex(v), p + 1, q + 1);
                }
            }
        }
        if self.constant != Complex64::default() {
            let _ = writeln!(out, "{} 0 0 0 0", format_complex(self.constant));
        }
        out
    }

    /// Largest entrywise deviation across constant, `h` and `g`.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        let h = max_abs(&(&self.h - &other.h));
        let g = self
            .g
            .iter()
            .zip(&other.g)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        h.max(g).max((self.constant - other.constant).norm())
    }
}

/// Parses an `N × N` complex matrix, one row per line.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (line, content) in content_lines(text) {
        let row = content
            .split_whitespace()
            .map(|tok| parse_complex(tok).ok_or_else(|| Error::parse(line, format!("bad entry '{tok}'"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::parse(0, "empty matrix"));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::parse(i + 1, format!("row has {} entries, expected {n}", r.len())));
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

pub fn format_matrix(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format_complex(m[(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// `h' = U h U^dag`, `g'` by four successive one-index transforms.
pub fn rotate_tensors(rot: &OrbitalRotation, t: &ElectronicTensors) -> Result<ElectronicTensors> {
    let n = t.n_orbitals();
    if rot.n_orbitals() != n {
        return Err(Error::DimensionMismatch {
            left: rot.n_orbitals(),
            right: n,
        });
    }
    let u = rot.unitary();
    let h = u * &t.h * u.adjoint();
    let mut g = t.g.clone();
    let mut scratch = vec![Complex64::default(); g.len()];
    // axis 0 and 2 take U, axes 1 and 3 take conj(U)
    for axis in 0..4 {
        let stride = n.pow(3 - axis as u32);
        for (flat, out) in scratch.iter_mut().enumerate() {
            let a = (flat / stride) % n;
            let base = flat - a * stride;
            let mut acc = Complex64::default();
            for p in 0..n {
                let w = if axis % 2 == 0 { u[(a, p)] } else { u[(a, p)].conj() };
                acc += w * g[base + p * stride];
            }
            *out = acc;
        }
        std::mem::swap(&mut g, &mut scratch);
    }
    ElectronicTensors::new(t.constant, h, g)
}

/// The rotated operator built by substituting rotated ladder operators into
/// every term, then normal-ordering.
pub fn rotate_by_substitution(rot: &OrbitalRotation, t: &ElectronicTensors) -> Result<FermiSum> {
    let n = t.n_orbitals();
    let cre: Vec<FermiSum> = (0..n).map(|p| rotate_creation(rot, p)).collect::<Result<_>>()?;
    let ann: Vec<FermiSum> = (0..n).map(|p| rotate_annihilation(rot, p)).collect::<Result<_>>()?;
    let mut out = FermiSum::identity(n).scale(t.constant);
    for p in 0..n {
        for q in 0..n {
            let v = t.h[(p, q)];
            if v != Complex64::default() {
                out = out.axpy(v, &cre[p].mul(&ann[q])?)?;
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            let pq = cre[p].mul(&ann[q])?;
            for r in 0..n {
                for s in 0..n {
                    let v = t.g(p, q, r, s);
                    if v != Complex64::default() {
                        out = out.axpy(v, &pq.mul(&cre[r].mul(&ann[s])?)?)?;
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn zero_generator_is_identity() {
        let rot = OrbitalRotation::new(ComplexMatrix::zeros(3, 3)).unwrap();
        let mut t = ElectronicTensors::zeros(3);
        t.h[(0, 1)] = c(0.3);
        t.h[(1, 0)] = c(0.3);
        t.set_g(0, 1, 2, 0, c(0.7));
        assert_eq!(rotate_tensors(&rot, &t).unwrap(), t);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = c(1.0);
        assert!(matches!(OrbitalRotation::new(m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn swap_rotation_exchanges_orbitals() {
        // M = (π/2) σ_x gives U = i σ_x, so h = diag(1, 2) becomes diag(2, 1)
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = c(std::f64::consts::FRAC_PI_2);
        m[(1, 0)] = c(std::f64::consts::FRAC_PI_2);
        let rot = OrbitalRotation::new(m).unwrap();
        let mut t = ElectronicTensors::zeros(2);
        t.h[(0, 0)] = c(1.0);
        t.h[(1, 1)] = c(2.0);
        let r = rotate_tensors(&rot, &t).unwrap();
        assert!((r.h[(0, 0)] - c(2.0)).norm() < 1e-12);
        assert!((r.h[(1, 1)] - c(1.0)).norm() < 1e-12);
        assert!(r.h[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn fcidump_roundtrip() {
        let text = "&FCI NORB=2,\n&END\n0.5 1 2 2 1\n-0.25+0.5j 1 2 0 0\n-0.25-0.5j 2 1 0 0\n1.5 0 0 0 0\n";
        let t = ElectronicTensors::parse_fcidump(text).unwrap();
        assert_eq!(t.g(0, 1, 1, 0), c(0.5));
        assert_eq!(t.h[(0, 1)], Complex64::new(-0.25, 0.5));
        assert_eq!(t.constant, c(1.5));
        let again = ElectronicTensors::parse_fcidump(&t.to_fcidump(0.0)).unwrap();
        assert_eq!(again, t);
        assert!(ElectronicTensors::parse_fcidump("&FCI NORB=2\n&END\n1.0 3 1 0 0\n").is_err());
        assert!(ElectronicTensors::parse_fcidump("1.0 1 1 0 0\n").is_err());
    }

    #[test]
    fn matrix_io() {
        let m = parse_matrix("0 1+2j\n1-2j 3\n").unwrap();
        assert_eq!(m[(0, 1)], Complex64::new(1.0, 2.0));
        assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
        assert!(parse_matrix("1 2\n3\n").is_err());
    }
}

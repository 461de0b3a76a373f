//! Eigenvalue-difference sets and Lagrange block probes.
//!
//! With `G = Σ g_j P_j`, `ad_G` acts on the block `P_j O P_k` by the scalar
//! `g_j - g_k`. The Lagrange polynomial of `Δ` over the full difference set
//! therefore isolates the blocks with gap `Δ`, and the set `S` of supported
//! gaps fixes how many nested commutators the conjugation needs.
//!
//! `S` includes `0` whenever some diagonal block survives, since the zero-gap
//! row of the Vandermonde system is then required.

use num_complex::Complex64;
use serde::Serialize;

use super::{require_hermitian, DIFF_TOL};
use crate::error::{Error, Result};
use crate::operator::Operator;

const SUPPORT_REL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DifferenceSet {
    /// Distinct eigenvalues `g_1 < ... < g_L`.
    pub eigenvalues: Vec<f64>,
    /// All distinct differences `g_j - g_k`, sorted.
    pub all_diffs: Vec<f64>,
    /// Differences carried by nonvanishing blocks, sorted. Equals `all_diffs`
    /// until block information is supplied.
    pub supported: Vec<f64>,
}

impl DifferenceSet {
    pub fn supported(&self) -> &[f64] {
        &self.supported
    }

    pub fn contains(&self, delta: f64) -> bool {
        self.all_diffs.iter().any(|d| (d - delta).abs() <= DIFF_TOL)
    }

    /// Replaces the supported set, sorted.
    pub fn with_supported(mut self, mut supported: Vec<f64>) -> Self {
        supported.sort_by(|a, b| a.total_cmp(b));
        self.supported = supported;
        self
    }
}

fn dedup_sorted(mut vals: Vec<f64>) -> Vec<f64> {
    vals.sort_by(|a, b| a.total_cmp(b));
    let mut out: Vec<f64> = Vec::with_capacity(vals.len());
    for v in vals {
        match out.last() {
            Some(&last) if (v - last).abs() <= DIFF_TOL => {}
            _ => out.push(v),
        }
    }
    out
}

/// All distinct differences of the spectrum, deduplicated at `1e-9`.
pub fn difference_set(eigenvalues: &[f64]) -> Result<DifferenceSet> {
    if eigenvalues.is_empty() {
        return Err(Error::InvalidInput("eigenvalue list is empty".into()));
    }
    let eigs = dedup_sorted(eigenvalues.to_vec());
    let diffs = eigs
        .iter()
        .flat_map(|a| eigs.iter().map(move |b| a - b))
        .collect();
    let all_diffs = dedup_sorted(diffs);
    Ok(DifferenceSet {
        eigenvalues: eigs,
        supported: all_diffs.clone(),
        all_diffs,
    })
}

/// A Hermitian generator together with its (distinct) eigenvalues.
#[derive(Clone, Debug)]
pub struct SpectralGenerator<O> {
    generator: O,
    eigenvalues: Vec<f64>,
}

impl<O: Operator> SpectralGenerator<O> {
    pub fn new(generator: O, eigenvalues: &[f64]) -> Result<Self> {
        require_hermitian(&generator)?;
        let eigenvalues = dedup_sorted(eigenvalues.to_vec());
        if eigenvalues.is_empty() {
            return Err(Error::InvalidInput("eigenvalue list is empty".into()));
        }
        Ok(Self {
            generator,
            eigenvalues,
        })
    }

    /// Assembles `G = Σ g_j P_j` from spectral projectors.
    pub fn from_projectors(projectors: &[O], eigenvalues: &[f64]) -> Result<Self> {
        if projectors.len() != eigenvalues.len() || projectors.is_empty() {
            return Err(Error::InvalidInput(
                "need one projector per eigenvalue".into(),
            ));
        }
        let mut g = projectors[0].zero_like();
        for (p, &e) in projectors.iter().zip(eigenvalues) {
            g = g.axpy(Complex64::new(e, 0.0), p)?;
        }
        Self::new(g, eigenvalues)
    }

    pub fn generator(&self) -> &O {
        &self.generator
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn difference_set(&self) -> DifferenceSet {
        difference_set(&self.eigenvalues).expect("nonempty by construction")
    }

    /// Spectral projectors `P_j = Π_{k≠j} (G - g_k)/(g_j - g_k)`.
    pub fn projectors(&self) -> Result<Vec<O>> {
        let id = self.generator.identity_like();
        let mut out = Vec::with_capacity(self.eigenvalues.len());
        for (j, &gj) in self.eigenvalues.iter().enumerate() {
            let mut p = id.clone();
            for (k, &gk) in self.eigenvalues.iter().enumerate() {
                if k == j {
                    continue;
                }
                let shifted = self.generator.axpy(Complex64::new(-gk, 0.0), &id)?;
                p = p.mul(&shifted)?.scale(Complex64::new(1.0 / (gj - gk), 0.0));
            }
            out.push(p);
        }
        Ok(out)
    }

    /// `poly_D^{(Δ)}(ad_G)(O)`: the sum of blocks `P_j O P_k` with `g_j - g_k = Δ`.
    pub fn isolate_blocks(&self, o: &O, delta: f64) -> Result<O> {
        let d = self.difference_set();
        let target = d
            .all_diffs
            .iter()
            .copied()
            .find(|x| (x - delta).abs() <= DIFF_TOL)
            .ok_or(Error::DeltaNotInSet { delta })?;
        let mut x = o.clone();
        for &other in d.all_diffs.iter().filter(|&&v| v != target) {
            let ad = self.generator.commutator(&x)?;
            x = ad
                .axpy(Complex64::new(-other, 0.0), &x)?
                .scale(Complex64::new(1.0 / (target - other), 0.0));
        }
        Ok(x)
    }
}

/// Norm of the Lagrange-isolated blocks with gap `delta`.
///
/// Uses `ad_G` (not `ad_{iG}`) so the probe points are the real differences.
pub fn lagrange_block_probe<O: Operator>(
    generator: &SpectralGenerator<O>,
    o: &O,
    delta: f64,
) -> Result<f64> {
    Ok(generator.isolate_blocks(o, delta)?.norm())
}

/// `S = {Δ ∈ D : ||poly_D^{(Δ)}(ad_G)(O)|| > 1e-9 ||O||}`.
pub fn supported_set<O: Operator>(generator: &SpectralGenerator<O>, o: &O) -> Result<DifferenceSet> {
    let d = generator.difference_set();
    let threshold = SUPPORT_REL_TOL * o.norm();
    let mut supported = Vec::new();
    for &delta in &d.all_diffs {
        if lagrange_block_probe(generator, o, delta)? > threshold {
            supported.push(delta);
        }
    }
    Ok(d.with_supported(supported))
}

/// Block reduction for `{G, O} = 0`: only blocks `P_g O P_{-g}` survive, so
/// `S = {2g : g, -g ∈ eig(G), ||P_g O P_{-g}|| ≠ 0}`.
pub fn anticommuting_reduction<O: Operator>(
    generator: &SpectralGenerator<O>,
    o: &O,
) -> Result<DifferenceSet> {
    let g = generator.generator();
    let anti = g.anticommutator(o)?.norm();
    let scale = g.norm() * o.norm();
    if anti > 1e-10 * scale.max(1.0) {
        return Err(Error::NotAnticommuting { norm: anti });
    }
    let eigs = generator.eigenvalues();
    let projectors = generator.projectors()?;
    let threshold = SUPPORT_REL_TOL * o.norm();
    let mut supported = Vec::new();
    for (i, &gi) in eigs.iter().enumerate() {
        let Some(j) = eigs.iter().position(|&gj| (gi + gj).abs() <= DIFF_TOL) else {
            continue;
        };
        let block = projectors[i].mul(o)?.mul(&projectors[j])?;
        if block.norm() > threshold {
            supported.push(2.0 * gi);
        }
    }
    Ok(generator.difference_set().with_supported(supported))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::PauliSum;

    fn pauli(label: &str, c: f64) -> PauliSum {
        PauliSum::from_label(label, c).unwrap()
    }

    #[test]
    fn difference_sets() {
        assert_eq!(difference_set(&[1.0, -1.0]).unwrap().all_diffs, vec![-2.0, 0.0, 2.0]);
        assert_eq!(
            difference_set(&[0.0, 1.0, -1.0]).unwrap().all_diffs,
            vec![-2.0, -1.0, 0.0, 1.0, 2.0]
        );
        assert_eq!(difference_set(&[0.7]).unwrap().all_diffs, vec![0.0]);
        assert!(difference_set(&[]).is_err());
        // near-duplicates merge
        assert_eq!(difference_set(&[1.0, 1.0 + 1e-12]).unwrap().eigenvalues.len(), 1);
    }

    #[test]
    fn supported_sets_single_pauli() {
        let g = SpectralGenerator::new(pauli("ZI", 1.0), &[-1.0, 1.0]).unwrap();
        let anti = pauli("XZ", 1.0);
        assert_eq!(supported_set(&g, &anti).unwrap().supported, vec![-2.0, 2.0]);
        let generic = anti.add(&pauli("ZX", 0.3)).unwrap();
        assert_eq!(supported_set(&g, &generic).unwrap().supported, vec![-2.0, 0.0, 2.0]);
        let commuting = pauli("ZZ", 1.0);
        assert_eq!(supported_set(&g, &commuting).unwrap().supported, vec![0.0]);
    }

    #[test]
    fn probe_commuting_nonzero_delta_is_zero() {
        let g = SpectralGenerator::new(pauli("Z", 1.0), &[-1.0, 1.0]).unwrap();
        let o = pauli("Z", 0.4);
        assert!(lagrange_block_probe(&g, &o, 2.0).unwrap() < 1e-14);
        assert!(lagrange_block_probe(&g, &o, 0.0).unwrap() > 0.1);
        assert!(matches!(lagrange_block_probe(&g, &o, 1.0), Err(Error::DeltaNotInSet { .. })));
    }

    #[test]
    fn probe_sum_rule() {
        let g = SpectralGenerator::new(pauli("ZX", 1.0), &[-1.0, 1.0]).unwrap();
        let o = pauli("XX", 0.3).add(&pauli("YI", -0.7)).unwrap().add(&pauli("IX", 1.1)).unwrap();
        let mut total = o.zero_like();
        for &d in &g.difference_set().all_diffs {
            total = total.add(&g.isolate_blocks(&o, d).unwrap()).unwrap();
        }
        assert!(total.max_deviation(&o) < 1e-12);
    }

    #[test]
    fn projectors_resolve_identity() {
        let g = SpectralGenerator::new(pauli("XYZ", 1.0), &[-1.0, 1.0]).unwrap();
        let ps = g.projectors().unwrap();
        let sum = ps[0].add(&ps[1]).unwrap();
        assert!(sum.max_deviation(&PauliSum::identity(3)) < 1e-14);
        let rebuilt = SpectralGenerator::from_projectors(&ps, &[-1.0, 1.0]).unwrap();
        assert!(rebuilt.generator().max_deviation(&pauli("XYZ", 1.0)) < 1e-14);
    }

    #[test]
    fn anticommuting_reduction_cases() {
        let g = SpectralGenerator::new(pauli("Z", 1.0), &[-1.0, 1.0]).unwrap();
        let s = anticommuting_reduction(&g, &pauli("X", 1.0)).unwrap();
        assert_eq!(s.supported, vec![-2.0, 2.0]);
        assert!(s.supported.len() <= s.eigenvalues.len());
        assert!(matches!(
            anticommuting_reduction(&g, &pauli("Z", 1.0)),
            Err(Error::NotAnticommuting { .. })
        ));
    }

    #[test]
    fn anticommuting_without_pairs_is_empty() {
        // spectrum {1, 2} has no ± pairs; only O = 0 anticommutes with G
        let g = pauli("I", 1.5).add(&pauli("Z", 0.5)).unwrap();
        let g = SpectralGenerator::new(g, &[1.0, 2.0]).unwrap();
        let s = anticommuting_reduction(&g, &PauliSum::zero(1)).unwrap();
        assert!(s.supported.is_empty());
    }
}

//! Projected-block structure of a fragment `H_α = T_α + T_α^dag` in the
//! eigenbasis of a UCC generator.
//!
//! `T_G` maps occupation states whose pattern on its support is `φ` (the
//! input pattern) to pattern `ψ` (the output pattern); `P_G` spans exactly
//! those two pattern classes and `P_0` everything else. `T_α` likewise maps a
//! fixed input pattern to a fixed output pattern on its own support. Splitting
//! the `T_G` support into orbitals shared with `T_α` and unshared ones `U`
//! (left free by `T_α`), each configuration `u` of `U` gives one class
//! transition `class(in, u) → class(out, u)`, which decides the block family:
//!
//! * both classes in `P_G` → `P_± H P_±` / `P_± H P_∓`,
//! * exactly one in `P_G` → `P_± H P_0` / `P_0 H P_±`,
//! * neither → `P_0 H P_0`.
//!
//! Within the `P_G` family the off-diagonal blocks always survive unless the
//! pair commutes, and the diagonal ones vanish exactly when `T_α` acts like
//! `T_G` or `T_G^dag` on the shared orbitals and as occupation operators
//! elsewhere.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::Serialize;

use super::ucc::UCCGenerator;
use crate::adjoint::{difference_set, solve_vandermonde, transform_via_spectrum, DifferenceSet};
use crate::error::Result;
use crate::operator::{jordan_wigner, FermiString, FermiSum, LocalAction};

const VANISH_TOL: f64 = 1e-10;

/// A family of projected blocks, grouped as the classification sees them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BlockFamily {
    /// `P_± H P_±`
    #[serde(rename = "P±HP±")]
    Diagonal,
    /// `P_± H P_∓`
    #[serde(rename = "P±HP∓")]
    OffDiagonal,
    /// `P_± H P_0`
    #[serde(rename = "P±HP0")]
    PgToZero,
    /// `P_0 H P_±`
    #[serde(rename = "P0HP±")]
    ZeroToPg,
    /// `P_0 H P_0`
    #[serde(rename = "P0HP0")]
    Zero,
}

impl BlockFamily {
    pub const ALL: [BlockFamily; 5] = [
        BlockFamily::Diagonal,
        BlockFamily::OffDiagonal,
        BlockFamily::PgToZero,
        BlockFamily::ZeroToPg,
        BlockFamily::Zero,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BlockFamily::Diagonal => "P±HP±",
            BlockFamily::OffDiagonal => "P±HP∓",
            BlockFamily::PgToZero => "P±HP0",
            BlockFamily::ZeroToPg => "P0HP±",
            BlockFamily::Zero => "P0HP0",
        }
    }

    /// Eigenvalue gaps `g_j - g_k` carried by the family.
    pub fn gaps(self) -> &'static [f64] {
        match self {
            BlockFamily::Diagonal | BlockFamily::Zero => &[0.0],
            BlockFamily::OffDiagonal => &[-2.0, 2.0],
            BlockFamily::PgToZero | BlockFamily::ZeroToPg => &[-1.0, 1.0],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseLabel {
    /// `[H_α, G] = 0`.
    Commuting,
    /// `T_α` acts as `T_G` on the shared orbitals.
    #[serde(rename = "i")]
    I,
    /// `T_α` acts as `T_G^dag` on the shared orbitals.
    #[serde(rename = "ii")]
    Ii,
    /// `T_α` acts as `T_G T_G^dag` on the shared orbitals.
    #[serde(rename = "iii")]
    Iii,
    /// `T_α` acts as `T_G^dag T_G` on the shared orbitals.
    #[serde(rename = "iv")]
    Iv,
    /// `P_G H_α P_G = 0` with live `P_± H P_0` blocks.
    GenericOffdiag,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::Commuting => "commuting",
            CaseLabel::I => "i",
            CaseLabel::Ii => "ii",
            CaseLabel::Iii => "iii",
            CaseLabel::Iv => "iv",
            CaseLabel::GenericOffdiag => "generic_offdiag",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockPattern {
    pub case_label: CaseLabel,
    pub vanishing: BTreeSet<BlockFamily>,
    pub s: DifferenceSet,
}

impl BlockPattern {
    fn from_live(case_label: CaseLabel, live: &BTreeSet<BlockFamily>) -> Self {
        let vanishing = BlockFamily::ALL
            .into_iter()
            .filter(|f| !live.contains(f))
            .collect();
        let mut gaps: Vec<f64> = live.iter().flat_map(|f| f.gaps().iter().copied()).collect();
        gaps.sort_by(|a, b| a.total_cmp(b));
        gaps.dedup();
        let s = difference_set(&[-1.0, 0.0, 1.0])
            .expect("nonempty")
            .with_supported(gaps);
        Self {
            case_label,
            vanishing,
            s,
        }
    }

    pub fn supported(&self) -> &[f64] {
        &self.s.supported
    }

    pub fn n_commutators(&self) -> usize {
        self.s.supported.len().saturating_sub(1)
    }

    pub fn is_live(&self, family: BlockFamily) -> bool {
        !self.vanishing.contains(&family)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Phi,
    Psi,
    Zero,
}

/// Exact structural classification of `(T_G, T_α)`.
pub fn classify_ucc_pair(g: &UCCGenerator, t_alpha: &FermiString) -> BlockPattern {
    let g_act = g.excitation().local_actions();
    let a_act = t_alpha.local_actions();

    let shared: Vec<usize> = g_act.keys().filter(|p| a_act.contains_key(p)).copied().collect();
    let unshared: Vec<usize> = g_act.keys().filter(|p| !a_act.contains_key(p)).copied().collect();

    let pattern = |act: &BTreeMap<usize, LocalAction>, idx: &[usize], output: bool| -> Vec<bool> {
        idx.iter()
            .map(|p| {
                let (i, o) = act[p].occupations();
                if output {
                    o
                } else {
                    i
                }
            })
            .collect()
    };
    let phi_sh = pattern(&g_act, &shared, false);
    let psi_sh = pattern(&g_act, &shared, true);
    let phi_u = pattern(&g_act, &unshared, false);
    let psi_u = pattern(&g_act, &unshared, true);
    let in_sh = pattern(&a_act, &shared, false);
    let out_sh = pattern(&a_act, &shared, true);

    let class = |sh: &[bool], u: &[bool]| {
        if sh == phi_sh.as_slice() && u == phi_u.as_slice() {
            Class::Phi
        } else if sh == psi_sh.as_slice() && u == psi_u.as_slice() {
            Class::Psi
        } else {
            Class::Zero
        }
    };

    // Only u = φ_U or ψ_U can put either end of a transition into P_G.
    let mut candidates = vec![phi_u.clone()];
    if psi_u != phi_u {
        candidates.push(psi_u.clone());
    }
    let mut pg_pg = false;
    let mut cross = false;
    let mut touched = 0usize;
    for u in &candidates {
        let a = class(&in_sh, u) != Class::Zero;
        let b = class(&out_sh, u) != Class::Zero;
        pg_pg |= a && b;
        cross |= a != b;
        touched += usize::from(a || b);
    }
    // Some configuration of U leaves both ends in P_0.
    let zero_zero = unshared.len() >= 2 || (1usize << unshared.len()) > touched;

    let l_alpha_number = a_act
        .iter()
        .filter(|(p, _)| !g_act.contains_key(p))
        .all(|(_, a)| *a == LocalAction::Number);

    let mut live = BTreeSet::new();
    if zero_zero {
        live.insert(BlockFamily::Zero);
    }
    if cross {
        live.insert(BlockFamily::PgToZero);
        live.insert(BlockFamily::ZeroToPg);
    }
    let commuting_shared = phi_sh == psi_sh && in_sh == out_sh;
    let label = if pg_pg && commuting_shared {
        live.insert(BlockFamily::Diagonal);
        CaseLabel::Commuting
    } else if pg_pg {
        live.insert(BlockFamily::OffDiagonal);
        let transfer = in_sh != out_sh;
        if !(transfer && l_alpha_number) {
            live.insert(BlockFamily::Diagonal);
        }
        match (transfer, in_sh == phi_sh) {
            (true, true) => CaseLabel::I,
            (true, false) => CaseLabel::Ii,
            (false, false) => CaseLabel::Iii,
            (false, true) => CaseLabel::Iv,
        }
    } else if cross {
        CaseLabel::GenericOffdiag
    } else {
        CaseLabel::Commuting
    };
    BlockPattern::from_live(label, &live)
}

/// `H_α = T_α + T_α^dag` on `n_orbitals` orbitals.
pub fn fragment(t_alpha: &FermiString, n_orbitals: usize) -> Result<FermiSum> {
    let t = FermiSum::from_string(n_orbitals, t_alpha.clone(), Complex64::new(1.0, 0.0))
        .with_orbitals(n_orbitals)?;
    t.add(&t.dagger())
}

/// Register large enough for both strings.
pub fn pair_orbitals(g: &UCCGenerator, t_alpha: &FermiString) -> usize {
    let m = t_alpha.max_index().map_or(0, |m| m + 1);
    g.n_orbitals().max(m)
}

fn frobenius(op: &FermiSum) -> Result<f64> {
    Ok(jordan_wigner(op, op.n_orbitals())?.frobenius_norm())
}

/// Normalized Frobenius norms `||P_a H_α P_b||` for `a, b ∈ {+, -, 0}`, keyed
/// `"P+HP-"` and so on. Computed in normal-ordered algebra, measured after
/// Jordan-Wigner.
pub fn pg_sandwich_norms(g: &UCCGenerator, t_alpha: &FermiString) -> Result<BTreeMap<String, f64>> {
    let n = pair_orbitals(g, t_alpha);
    let g = g.with_orbitals(n)?;
    let h = fragment(t_alpha, n)?;
    let projectors = [
        ("+", g.p_plus()),
        ("-", g.p_minus()),
        ("0", g.p_zero()),
    ];
    let mut out = BTreeMap::new();
    for (a, pa) in &projectors {
        let left = pa.mul(&h)?;
        for (b, pb) in &projectors {
            out.insert(format!("P{a}HP{b}"), frobenius(&left.mul(pb)?)?);
        }
    }
    Ok(out)
}

/// Block families that are nonzero according to explicit projector algebra.
pub fn live_families(norms: &BTreeMap<String, f64>) -> BTreeSet<BlockFamily> {
    let get = |k: &str| norms.get(k).copied().unwrap_or(0.0);
    let mut live = BTreeSet::new();
    if get("P+HP+").max(get("P-HP-")) > VANISH_TOL {
        live.insert(BlockFamily::Diagonal);
    }
    if get("P+HP-").max(get("P-HP+")) > VANISH_TOL {
        live.insert(BlockFamily::OffDiagonal);
    }
    if get("P+HP0").max(get("P-HP0")) > VANISH_TOL {
        live.insert(BlockFamily::PgToZero);
    }
    if get("P0HP+").max(get("P0HP-")) > VANISH_TOL {
        live.insert(BlockFamily::ZeroToPg);
    }
    if get("P0HP0") > VANISH_TOL {
        live.insert(BlockFamily::Zero);
    }
    live
}

/// Live block families from four normal-ordered products:
/// `P_± H P_± ⊕ P_± H P_∓ = P_G H P_G` split by `G H G`, the cross family
/// `P_G H P_0`, and `P_0 H P_0`. Normal-ordered strings are linearly
/// independent, so a family is live iff its sum has a nonzero coefficient.
pub fn live_families_fast(g: &UCCGenerator, t_alpha: &FermiString) -> Result<BTreeSet<BlockFamily>> {
    let n = pair_orbitals(g, t_alpha);
    let g = g.with_orbitals(n)?;
    let h = fragment(t_alpha, n)?;
    let pg_h = g.p_g().mul(&h)?;
    let pgp = pg_h.mul(g.p_g())?;
    let ghg = g.generator().mul(&h)?.mul(g.generator())?;
    let diag = pgp.add(&ghg)?;
    let off = pgp.sub(&ghg)?;
    let cross = pg_h.mul(g.p_zero())?;
    let zero = g.p_zero().mul(&h)?.mul(g.p_zero())?;
    let scale = VANISH_TOL * h.coefficient_norm().max(1.0);
    let mut live = BTreeSet::new();
    for (family, op) in [
        (BlockFamily::Diagonal, &diag),
        (BlockFamily::OffDiagonal, &off),
        (BlockFamily::PgToZero, &cross),
        (BlockFamily::Zero, &zero),
    ] {
        if op.coefficient_norm() > scale {
            live.insert(family);
            if family == BlockFamily::PgToZero {
                live.insert(BlockFamily::ZeroToPg);
            }
        }
    }
    Ok(live)
}

/// `e^{iθG} H_α e^{-iθG}` with the coefficient set fixed by the classification.
pub fn ucc_fragment_transform(g: &UCCGenerator, t_alpha: &FermiString, theta: f64) -> Result<FermiSum> {
    let pattern = classify_ucc_pair(g, t_alpha);
    let n = pair_orbitals(g, t_alpha);
    let g = g.with_orbitals(n)?;
    let h = fragment(t_alpha, n)?;
    if pattern.case_label == CaseLabel::Commuting {
        return Ok(h);
    }
    transform_via_spectrum(g.generator(), &h, theta, &pattern.s)
}

/// Coefficients used by [`ucc_fragment_transform`] at `theta`.
pub fn ucc_fragment_coefficients(g: &UCCGenerator, t_alpha: &FermiString, theta: f64) -> Result<Vec<f64>> {
    let pattern = classify_ucc_pair(g, t_alpha);
    Ok(solve_vandermonde(pattern.supported(), theta)?.coefficients)
}

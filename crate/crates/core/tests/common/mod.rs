#![allow(dead_code)]

use exact_adjoint::lie::ComplexMatrix;
use exact_adjoint::operator::{FermiSum, LadderOp, PauliString, PauliSum};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_label(rng: &mut impl Rng, n: usize) -> String {
    (0..n).map(|_| *['I', 'X', 'Y', 'Z'].choose(rng).unwrap()).collect()
}

pub fn random_string(rng: &mut impl Rng, n: usize) -> PauliString {
    PauliString::from_label(&random_label(rng, n)).unwrap()
}

pub fn random_non_identity(rng: &mut impl Rng, n: usize) -> PauliString {
    loop {
        let s = random_string(rng, n);
        if !s.is_identity() {
            return s;
        }
    }
}

pub fn random_sum(rng: &mut impl Rng, n: usize, terms: usize) -> PauliSum {
    let mut out = PauliSum::zero(n);
    for _ in 0..terms {
        let s = random_string(rng, n);
        out.add_term(s, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    }
    out
}

/// Real coefficients on phase-free strings: Hermitian.
pub fn random_hermitian_sum(rng: &mut impl Rng, n: usize, terms: usize) -> PauliSum {
    let mut out = PauliSum::zero(n);
    for _ in 0..terms {
        let s = random_string(rng, n);
        out.add_term(s, c(rng.gen_range(-1.0..1.0), 0.0));
    }
    out
}

/// Pairwise anticommuting strings, built greedily.
pub fn random_anticommuting_set(rng: &mut impl Rng, n: usize, k: usize) -> Vec<PauliString> {
    'outer: loop {
        let mut set: Vec<PauliString> = Vec::new();
        let mut attempts = 0;
        while set.len() < k {
            attempts += 1;
            if attempts > 500 {
                continue 'outer;
            }
            let s = random_non_identity(rng, n);
            if set.iter().all(|t| !t.commutes(&s).unwrap()) {
                set.push(s);
            }
        }
        return set;
    }
}

pub fn random_unit_weights(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    w.into_iter().map(|x| x / norm).collect()
}

pub fn random_word(rng: &mut impl Rng, n: usize, len: usize) -> Vec<LadderOp> {
    (0..len)
        .map(|_| LadderOp {
            index: rng.gen_range(0..n),
            dagger: rng.gen_bool(0.5),
        })
        .collect()
}

pub fn random_fermi_sum(rng: &mut impl Rng, n: usize, terms: usize, max_len: usize) -> FermiSum {
    let mut out = FermiSum::zero(n);
    for _ in 0..terms {
        let len = rng.gen_range(0..=max_len);
        let w = random_word(rng, n, len);
        out.add_word(&w, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).unwrap();
    }
    out
}

pub fn random_hermitian_matrix(rng: &mut impl Rng, n: usize, scale: f64) -> ComplexMatrix {
    let a = ComplexMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&a + a.adjoint()).map(|z| z * (0.5 * scale))
}

mod common;

use std::f64::consts::PI;

use common::*;
use exact_adjoint::adjoint::{
    anticommuting_reduction, detect_closure, difference_set, lagrange_block_probe, nested_adjoints,
    solve_vandermonde, supported_set, transform_via_closure, transform_via_spectrum, SpectralGenerator,
    CLOSURE_TOL,
};
use exact_adjoint::generators::{pauli_generator_transform, InvolutoryGenerator};
use exact_adjoint::operator::{Operator, PauliSum};
use exact_adjoint::oracle::{conjugate_exact, pauli_to_dense};
use exact_adjoint::Error;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

/// Normalized Frobenius distance to the dense conjugation. It bounds every
/// Pauli coefficient deviation from above.
fn oracle_gap(g: &PauliSum, h: &PauliSum, theta: f64, out: &PauliSum) -> f64 {
    let d = conjugate_exact(&pauli_to_dense(g).unwrap(), &pauli_to_dense(h).unwrap(), theta).unwrap();
    pauli_to_dense(out).unwrap().distance(&d).unwrap()
}

fn dense_spectral(g: &PauliSum) -> SpectralGenerator<PauliSum> {
    let eigs = pauli_to_dense(g).unwrap().spectrum().unwrap();
    SpectralGenerator::new(g.clone(), &eigs).unwrap()
}

/// Generators with small, well-separated spectra: commuting Pauli sums with
/// half-integer weights plus a few non-commuting two-term sums.
fn structured_generator(rng: &mut impl Rng, n: usize) -> PauliSum {
    let choice = rng.gen_range(0..3);
    match choice {
        0 => {
            let mut g = PauliSum::zero(n);
            let zs = rng.gen_range(1..=2);
            for k in 0..zs {
                let mut label = vec!['I'; n];
                label[(k * 2 + rng.gen_range(0..2)) % n] = 'Z';
                let w = [0.5, 1.0][rng.gen_range(0..2)];
                g = g.add(&PauliSum::from_label(&label.iter().collect::<String>(), w).unwrap()).unwrap();
            }
            g
        }
        1 => {
            let s = random_non_identity(rng, n);
            PauliSum::from_string(s, c([1.0, -1.0, 0.5][rng.gen_range(0..3)], 0.0))
        }
        _ => {
            let set = random_anticommuting_set(rng, n, 2);
            let mut g = PauliSum::zero(n);
            g.add_term(set[0].clone(), c(0.6, 0.0));
            g.add_term(set[1].clone(), c(0.8, 0.0));
            g
        }
    }
}

#[test]
fn single_pauli_matches_oracle() {
    let mut r = rng(21);
    let mut count = 0;
    for _ in 0..240 {
        let n = r.gen_range(1..=6);
        let p = random_non_identity(&mut r, n);
        let sign = if r.gen_bool(0.5) { 1.0 } else { -1.0 };
        let gen = InvolutoryGenerator::single(p, sign).unwrap();
        let terms = r.gen_range(1..=6);
        let h = random_hermitian_sum(&mut r, n, terms);
        let theta = r.gen_range(-PI..PI);
        let fast = pauli_generator_transform(&gen, &h, theta).unwrap();
        let spec = dense_spectral(gen.body());
        let s = supported_set(&spec, &h).unwrap();
        let via_spectrum = transform_via_spectrum(gen.body(), &h, theta, &s).unwrap();
        assert!(oracle_gap(gen.body(), &h, theta, &fast) < 1e-9);
        assert!(oracle_gap(gen.body(), &h, theta, &via_spectrum) < 1e-9);
        count += 1;
    }
    assert!(count >= 200);
}

#[test]
fn closure_and_spectrum_routes_agree() {
    let mut r = rng(22);
    for _ in 0..150 {
        let n = r.gen_range(1..=4);
        let g = structured_generator(&mut r, n);
        let terms = r.gen_range(1..=5);
        let h = random_hermitian_sum(&mut r, n, terms);
        let theta = r.gen_range(-PI..PI);
        let spec = dense_spectral(&g);
        let s = supported_set(&spec, &h).unwrap();
        let closure = detect_closure(&g, &h, 16).unwrap();
        assert_eq!(closure.degree(), s.supported().len(), "G = {}, H = {}", g.to_text(), h.to_text());
        let a = transform_via_closure(&g, &h, theta, &closure).unwrap();
        let b = transform_via_spectrum(&g, &h, theta, &s).unwrap();
        assert!(a.max_deviation(&b) < 1e-9);
        assert!(oracle_gap(&g, &h, theta, &a) < 1e-9);
    }
}

#[test]
fn krylov_powers_are_independent() {
    let mut r = rng(23);
    for _ in 0..100 {
        let n = r.gen_range(1..=4);
        let g = structured_generator(&mut r, n);
        let terms = r.gen_range(1..=5);
        let h = random_hermitian_sum(&mut r, n, terms);
        let closure = detect_closure(&g, &h, 16).unwrap();
        let d = closure.degree();
        if d == 0 {
            continue;
        }
        let gram = closure.gram_matrix();
        let m = DMatrix::from_fn(d, d, |i, j| gram[i][j]);
        let eigs = m.symmetric_eigenvalues();
        let smallest = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hn = h.norm();
        assert!(smallest > CLOSURE_TOL * hn * hn, "smallest Gram eigenvalue {smallest}");
    }
}

#[test]
fn coefficients_are_real_for_hermitian_setups() {
    let mut r = rng(24);
    for _ in 0..1000 {
        let k = r.gen_range(1..=4);
        let mut eigs: Vec<f64> = (0..k).map(|_| (r.gen_range(-4..=4) as f64) * 0.5).collect();
        eigs.sort_by(|a, b| a.total_cmp(b));
        eigs.dedup();
        let d = difference_set(&eigs).unwrap();
        let theta = r.gen_range(-PI..PI);
        let c = exact_adjoint::adjoint::solve_vandermonde_complex(&d.all_diffs, theta).unwrap();
        let residue = c.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        assert!(residue < 1e-9);
        assert!(solve_vandermonde(&d.all_diffs, theta).is_ok());
    }
}

#[test]
fn supported_set_never_exceeds_difference_set() {
    let mut r = rng(25);
    for _ in 0..100 {
        let n = r.gen_range(1..=4);
        let g = structured_generator(&mut r, n);
        let terms = r.gen_range(1..=4);
        let h = random_hermitian_sum(&mut r, n, terms);
        let spec = dense_spectral(&g);
        let s = supported_set(&spec, &h).unwrap();
        assert!(s.supported().len() <= s.all_diffs.len());
        assert!(s.supported().iter().all(|&d| s.contains(d)));
    }
}

#[test]
fn transform_preserves_norm() {
    let mut r = rng(26);
    for _ in 0..100 {
        let n = r.gen_range(1..=5);
        let g = structured_generator(&mut r, n);
        let terms = r.gen_range(1..=6);
        let h = random_hermitian_sum(&mut r, n, terms);
        let theta = r.gen_range(-PI..PI);
        let s = supported_set(&dense_spectral(&g), &h).unwrap();
        let out = transform_via_spectrum(&g, &h, theta, &s).unwrap();
        assert!((out.frobenius_norm() - h.frobenius_norm()).abs() < 1e-9);
        assert!(out.is_hermitian(1e-10));
    }
}

#[test]
fn nested_adjoints_match_dense() {
    let mut r = rng(27);
    for _ in 0..30 {
        let n = 3;
        let g = random_hermitian_sum(&mut r, n, 3);
        let h = random_hermitian_sum(&mut r, n, 3);
        let powers = nested_adjoints(&g, &h, 4).unwrap();
        let dg = pauli_to_dense(&g).unwrap().scale(Complex64::new(0.0, 1.0));
        let mut x = pauli_to_dense(&h).unwrap();
        for p in &powers {
            assert!(pauli_to_dense(p).unwrap().distance(&x).unwrap() < 1e-10 * (1.0 + x.normalized_norm()));
            x = dg.commutator(&x).unwrap();
        }
    }
}

#[test]
fn lagrange_probe_isolates_single_pauli_gaps() {
    let z = PauliSum::from_label("Z", 1.0).unwrap();
    let x = PauliSum::from_label("X", 1.0).unwrap();
    let spec = SpectralGenerator::new(z.clone(), &[-1.0, 1.0]).unwrap();
    assert!(lagrange_block_probe(&spec, &x, 0.0).unwrap() < 1e-12);
    assert!(lagrange_block_probe(&spec, &x, 2.0).unwrap() > 0.5);
    assert!(lagrange_block_probe(&spec, &x, -2.0).unwrap() > 0.5);
    assert_eq!(supported_set(&spec, &x).unwrap().supported(), &[-2.0, 2.0]);
    assert_eq!(anticommuting_reduction(&spec, &x).unwrap().supported(), &[-2.0, 2.0]);
    assert!(matches!(
        anticommuting_reduction(&spec, &z),
        Err(Error::NotAnticommuting { .. })
    ));
    assert!(matches!(lagrange_block_probe(&spec, &x, 3.0), Err(Error::DeltaNotInSet { .. })));
}

#[test]
fn acp_transform_matches_oracle() {
    let mut r = rng(28);
    for _ in 0..80 {
        let n = r.gen_range(2..=5);
        let k = r.gen_range(2..=4);
        let set = random_anticommuting_set(&mut r, n, k);
        let w = random_unit_weights(&mut r, set.len());
        let gen = InvolutoryGenerator::anticommuting(set.into_iter().zip(w).collect()).unwrap();
        let h = random_hermitian_sum(&mut r, n, 5);
        let theta = r.gen_range(-PI..PI);
        let out = pauli_generator_transform(&gen, &h, theta).unwrap();
        assert!(oracle_gap(gen.body(), &h, theta, &out) < 1e-9);
    }
}

#[test]
fn theta_zero_is_identity_and_period_pi_for_involutions() {
    let mut r = rng(29);
    for _ in 0..20 {
        let n = 3;
        let p = random_non_identity(&mut r, n);
        let gen = InvolutoryGenerator::single(p, 1.0).unwrap();
        let h = random_hermitian_sum(&mut r, n, 4);
        assert!(pauli_generator_transform(&gen, &h, 0.0).unwrap().max_deviation(&h) < 1e-14);
        assert!(pauli_generator_transform(&gen, &h, PI).unwrap().max_deviation(&h) < 1e-12);
    }
}

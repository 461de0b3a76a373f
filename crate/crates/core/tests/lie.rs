mod common;

use common::*;
use exact_adjoint::lie::{
    conjugate_by_series, creation_basis, heisenberg_displace, linear_generator, module_adjoint_matrix,
    module_exponential, module_transform, rotate_annihilation, rotate_by_substitution, rotate_creation,
    rotate_tensors, ComplexMatrix, ElectronicTensors, OrbitalRotation, WeylPolynomial,
};
use exact_adjoint::operator::FermiSum;
use exact_adjoint::oracle::{conjugate_exact, fermi_to_dense, DenseOperator};
use num_complex::Complex64;
use rand::Rng;

fn random_tensors(rng: &mut impl Rng, n: usize) -> ElectronicTensors {
    let mut t = ElectronicTensors::zeros(n);
    t.constant = c(rng.gen_range(-1.0..1.0), 0.0);
    t.h = random_hermitian_matrix(rng, n, 1.0);
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    // g_pqrs = conj(g_srqp) keeps the operator Hermitian
                    if (s, r, q, p) < (p, q, r, s) {
                        continue;
                    }
                    let v = if (s, r, q, p) == (p, q, r, s) {
                        c(rng.gen_range(-0.5..0.5), 0.0)
                    } else {
                        c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))
                    };
                    t.set_g(p, q, r, s, v);
                    t.set_g(s, r, q, p, v.conj());
                }
            }
        }
    }
    t
}

fn dense_rotation(rot: &OrbitalRotation, op: &FermiSum) -> DenseOperator {
    let k = fermi_to_dense(&rot.generator_operator().unwrap()).unwrap();
    conjugate_exact(&k, &fermi_to_dense(op).unwrap(), 1.0).unwrap()
}

#[test]
fn rotated_tensors_match_dense_conjugation() {
    let mut r = rng(41);
    let n = 4;
    for _ in 0..20 {
        let m = random_hermitian_matrix(&mut r, n, 1.5);
        let rot = OrbitalRotation::new(m).unwrap();
        let t = random_tensors(&mut r, n);
        assert!(t.hermiticity_deviation().unwrap() < 1e-12);
        let rotated = rotate_tensors(&rot, &t).unwrap();
        let lhs = fermi_to_dense(&rotated.to_fermi_sum().unwrap()).unwrap();
        let rhs = dense_rotation(&rot, &t.to_fermi_sum().unwrap());
        assert!(lhs.distance(&rhs).unwrap() < 1e-9);
        let subst = rotate_by_substitution(&rot, &t).unwrap();
        assert!(subst.max_deviation(&rotated.to_fermi_sum().unwrap()) < 1e-10);
    }
}

#[test]
fn ladder_operators_rotate_linearly() {
    let mut r = rng(42);
    let n = 3;
    let rot = OrbitalRotation::new(random_hermitian_matrix(&mut r, n, 1.0)).unwrap();
    for p in 0..n {
        let cre = dense_rotation(&rot, &FermiSum::creation(n, p));
        assert!(fermi_to_dense(&rotate_creation(&rot, p).unwrap()).unwrap().distance(&cre).unwrap() < 1e-10);
        let ann = dense_rotation(&rot, &FermiSum::annihilation(n, p));
        assert!(fermi_to_dense(&rotate_annihilation(&rot, p).unwrap()).unwrap().distance(&ann).unwrap() < 1e-10);
    }
    assert!(rotate_creation(&rot, n).is_err());
}

#[test]
fn composition_and_unitarity() {
    let mut r = rng(43);
    let n = 4;
    for _ in 0..10 {
        let a = OrbitalRotation::new(random_hermitian_matrix(&mut r, n, 1.0)).unwrap();
        let b = OrbitalRotation::new(random_hermitian_matrix(&mut r, n, 1.0)).unwrap();
        assert!(a.unitarity_residual() < 1e-12);
        let t = random_tensors(&mut r, n);
        let sequential = rotate_tensors(&b, &rotate_tensors(&a, &t).unwrap()).unwrap();
        let composed = rotate_tensors(&a.then(&b).unwrap(), &t).unwrap();
        assert!(sequential.max_deviation(&composed) < 1e-10);

        let w = a.compound_adjoint();
        let residual = (&w * w.adjoint() - ComplexMatrix::identity(n * n, n * n)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(residual < 1e-10);
        // the compound adjoint is the action on the one-body tensor
        let h = &t.h;
        let flat = ComplexMatrix::from_fn(n * n, 1, |pq, _| h[(pq / n, pq % n)]);
        let image = &w * flat;
        let direct = rotate_tensors(&a, &t).unwrap().h;
        for rs in 0..n * n {
            assert!((image[(rs, 0)] - direct[(rs / n, rs % n)]).norm() < 1e-10);
        }
    }
}

#[test]
fn spectrum_of_one_body_part_is_invariant() {
    let mut r = rng(44);
    let n = 4;
    let rot = OrbitalRotation::new(random_hermitian_matrix(&mut r, n, 2.0)).unwrap();
    let t = random_tensors(&mut r, n);
    let before = t.h.clone().symmetric_eigenvalues();
    let after = rotate_tensors(&rot, &t).unwrap().h.symmetric_eigenvalues();
    let mut b: Vec<f64> = before.iter().copied().collect();
    let mut a: Vec<f64> = after.iter().copied().collect();
    b.sort_by(|x, y| x.total_cmp(y));
    a.sort_by(|x, y| x.total_cmp(y));
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-10);
    }
}

#[test]
fn creation_module_transform_matches_dense() {
    let mut r = rng(45);
    let n = 3;
    for _ in 0..5 {
        let m = random_hermitian_matrix(&mut r, n, 1.0);
        let rot = OrbitalRotation::new(m.clone()).unwrap();
        let k = rot.generator_operator().unwrap();
        let basis = creation_basis(n);
        let a = module_adjoint_matrix(&k, &basis).unwrap();
        assert!((a.clone() - m.transpose()).iter().all(|z| z.norm() < 1e-12));
        let theta = r.gen_range(-2.0..2.0);
        let out = module_transform(&a, &basis, theta).unwrap();
        let dk = fermi_to_dense(&k).unwrap();
        for (b, o) in basis.iter().zip(&out) {
            let dense = conjugate_exact(&dk, &fermi_to_dense(b).unwrap(), theta).unwrap();
            assert!(fermi_to_dense(o).unwrap().distance(&dense).unwrap() < 1e-10);
        }
        // W = e^{iθA} is unitary for Hermitian A
        let w = module_exponential(&a, theta);
        let residual = (&w * w.adjoint() - ComplexMatrix::identity(n, n)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(residual < 1e-12);
    }
}

fn random_linear(rng: &mut impl Rng, modes: usize, hbar: f64) -> (Vec<f64>, Vec<f64>, f64, WeylPolynomial) {
    let u: Vec<f64> = (0..modes).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let v: Vec<f64> = (0..modes).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let z = rng.gen_range(-1.0..1.0);
    let g = linear_generator(&u, &v, z, hbar);
    (u, v, z, g)
}

#[test]
fn second_adjoint_of_linear_operators_vanishes() {
    let mut r = rng(46);
    let i = Complex64::new(0.0, 1.0);
    for _ in 0..100 {
        let modes = r.gen_range(1..=3);
        let hbar = r.gen_range(0.2..2.0);
        let (_, _, _, g) = random_linear(&mut r, modes, hbar);
        let (_, _, _, o) = random_linear(&mut r, modes, hbar);
        let ig = g.scale(i);
        let first = ig.commutator(&o).unwrap();
        assert!(first.degree() == 0);
        assert!(ig.commutator(&first).unwrap().is_empty());
    }
}

#[test]
fn displacement_of_quadratics() {
    let mut r = rng(47);
    for _ in 0..50 {
        let hbar = r.gen_range(0.2..2.0);
        let (u, v, z, g) = random_linear(&mut r, 1, hbar);
        let (a, b) = (-hbar * v[0], -hbar * u[0]);
        let x = WeylPolynomial::x(hbar, 0);
        let p = WeylPolynomial::p(hbar, 0);
        let one = WeylPolynomial::constant(hbar, c(1.0, 0.0));
        let x2 = x.mul(&x).unwrap();
        let p2 = p.mul(&p).unwrap();
        let xp = x.mul(&p).unwrap();
        let cases = [
            (x2.clone(), x2.axpy(c(2.0 * a, 0.0), &x).unwrap().axpy(c(a * a, 0.0), &one).unwrap()),
            (p2.clone(), p2.axpy(c(2.0 * b, 0.0), &p).unwrap().axpy(c(b * b, 0.0), &one).unwrap()),
            (
                xp.clone(),
                xp.axpy(c(b, 0.0), &x).unwrap().axpy(c(a, 0.0), &p).unwrap().axpy(c(a * b, 0.0), &one).unwrap(),
            ),
        ];
        for (poly, expected) in cases {
            let shifted = heisenberg_displace(&u, &v, z, &poly);
            assert!(shifted.max_deviation(&expected) < 1e-12);
            let series = conjugate_by_series(&g, &poly).unwrap();
            assert!(series.max_deviation(&expected) < 1e-12);
        }
    }
}

#[test]
fn series_agrees_with_substitution_on_random_polynomials() {
    let mut r = rng(48);
    for _ in 0..30 {
        let hbar = r.gen_range(0.2..2.0);
        let (u, v, z, g) = random_linear(&mut r, 2, hbar);
        let mut poly = WeylPolynomial::zero(hbar);
        for _ in 0..4 {
            let mut m = WeylPolynomial::constant(hbar, c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
            for _ in 0..r.gen_range(0..=3) {
                let j = r.gen_range(0..2);
                let f = if r.gen_bool(0.5) { WeylPolynomial::x(hbar, j) } else { WeylPolynomial::p(hbar, j) };
                m = m.mul(&f).unwrap();
            }
            poly = poly.add(&m).unwrap();
        }
        let a = heisenberg_displace(&u, &v, z, &poly);
        let b = conjugate_by_series(&g, &poly).unwrap();
        assert!(a.max_deviation(&b) < 1e-10);
    }
}

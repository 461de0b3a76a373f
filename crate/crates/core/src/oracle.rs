//! Dense-matrix ground truth for small systems.
//!
//! Basis index bit `q` is the occupation (or computational value) of qubit `q`,
//! so `a_0^dag a_0` on two orbitals is `diag(0, 1, 0, 1)`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{jordan_wigner, FermiSum, PauliString, PauliSum};

pub const DEFAULT_QUBIT_CAP: usize = 10;
pub const MAX_QUBIT_CAP: usize = 14;
pub const CAP_ENV_VAR: &str = "EXACT_ADJOINT_ORACLE_CAP";

const HERMITIAN_TOL: f64 = 1e-10;
const MERGE_TOL: f64 = 1e-9;

/// Qubit cap for dense construction, overridable through `EXACT_ADJOINT_ORACLE_CAP`.
pub fn qubit_cap() -> usize {
    std::env::var(CAP_ENV_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|c| c.min(MAX_QUBIT_CAP))
        .unwrap_or(DEFAULT_QUBIT_CAP)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    n_qubits: usize,
    entries: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn from_matrix(n_qubits: usize, entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: entries.nrows(),
            });
        }
        Ok(Self { n_qubits, entries })
    }

    pub fn identity(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        Self {
            n_qubits,
            entries: DMatrix::identity(dim, dim),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            n_qubits: self.n_qubits,
            entries: &self.entries * &other.entries,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            n_qubits: self.n_qubits,
            entries: &self.entries + &other.entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            n_qubits: self.n_qubits,
            entries: &self.entries - &other.entries,
        })
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self {
            n_qubits: self.n_qubits,
            entries: self.entries.map(|e| e * alpha),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            entries: self.entries.adjoint(),
        }
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius norm divided by `2^{n/2}`; equals the Pauli coefficient 2-norm.
    pub fn normalized_norm(&self) -> f64 {
        self.frobenius_norm() / (self.dim() as f64).sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        (&self.entries - self.entries.adjoint())
            .iter()
            .map(|e| e.norm())
            .fold(0.0, f64::max)
    }

    /// Normalized distance `||A - B||_F / 2^{n/2}`, an upper bound on the
    /// largest Pauli-coefficient deviation.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.normalized_norm())
    }

    fn hermitian_eigen(&self) -> Result<SymmetricEigen<Complex64, nalgebra::Dyn>> {
        let dev = self.hermiticity_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let sym = (&self.entries + self.entries.adjoint()).map(|e| e * 0.5);
        Ok(SymmetricEigen::new(sym))
    }

    /// `e^{iθG}` through the Hermitian eigendecomposition of `G`.
    pub fn exp_i(&self, theta: f64) -> Result<Self> {
        let eig = self.hermitian_eigen()?;
        let v = &eig.eigenvectors;
        let phases = eig
            .eigenvalues
            .map(|g| Complex64::from_polar(1.0, theta * g));
        let scaled = DMatrix::from_fn(v.nrows(), v.ncols(), |r, c| v[(r, c)] * phases[c]);
        Ok(Self {
            n_qubits: self.n_qubits,
            entries: scaled * v.adjoint(),
        })
    }

    /// Sorted eigenvalues with duplicates merged at `1e-9`.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        let eig = self.hermitian_eigen()?;
        Ok(merge_sorted(eig.eigenvalues.iter().copied().collect()))
    }

    /// Sorted eigenvalues with multiplicity.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let eig = self.hermitian_eigen()?;
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.total_cmp(b));
        Ok(vals)
    }

    /// Spectral projectors `(eigenvalue, P)` with eigenvalues merged at `1e-9`.
    pub fn spectral_projectors(&self) -> Result<Vec<(f64, DenseOperator)>> {
        let eig = self.hermitian_eigen()?;
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let dim = self.dim();
        let mut out: Vec<(f64, DenseOperator)> = Vec::new();
        for i in order {
            let g = eig.eigenvalues[i];
            let col = eig.eigenvectors.column(i);
            let outer = &col * col.adjoint();
            match out.last_mut() {
                Some((last, p)) if (g - *last).abs() <= MERGE_TOL => {
                    p.entries += outer;
                }
                _ => out.push((
                    g,
                    DenseOperator {
                        n_qubits: self.n_qubits,
                        entries: DMatrix::zeros(dim, dim) + outer,
                    },
                )),
            }
        }
        Ok(out)
    }
}

fn merge_sorted(mut vals: Vec<f64>) -> Vec<f64> {
    vals.sort_by(|a, b| a.total_cmp(b));
    let mut out: Vec<f64> = Vec::new();
    for v in vals {
        match out.last() {
            Some(&last) if (v - last).abs() <= MERGE_TOL => {}
            _ => out.push(v),
        }
    }
    out
}

fn check_cap(n_qubits: usize, cap: usize) -> Result<()> {
    if n_qubits > cap {
        return Err(Error::OracleCapExceeded {
            requested: n_qubits,
            cap,
        });
    }
    Ok(())
}

/// Adds `coeff * s` into a dense matrix.
fn accumulate_string(m: &mut DMatrix<Complex64>, s: &PauliString, coeff: Complex64) {
    // <c ^ x| i^{x.z} X^x Z^z |c> = i^{x.z} (-1)^{z.c}
    let x = s.x_words().first().copied().unwrap_or(0) as usize;
    let z = s.z_words().first().copied().unwrap_or(0) as usize;
    let y_phase = ((x & z).count_ones() as usize + s.phase() as usize) % 4;
    let base = coeff * crate::operator::pauli::I_POWERS[y_phase];
    for c in 0..m.ncols() {
        let sign = if (z & c).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        m[(c ^ x, c)] += base * sign;
    }
}

pub fn pauli_string_to_dense(s: &PauliString) -> Result<DenseOperator> {
    check_cap(s.n_qubits(), MAX_QUBIT_CAP)?;
    let dim = 1usize << s.n_qubits();
    let mut m = DMatrix::zeros(dim, dim);
    accumulate_string(&mut m, s, Complex64::new(1.0, 0.0));
    Ok(DenseOperator {
        n_qubits: s.n_qubits(),
        entries: m,
    })
}

pub fn pauli_to_dense(op: &PauliSum) -> Result<DenseOperator> {
    pauli_to_dense_capped(op, qubit_cap())
}

pub fn pauli_to_dense_capped(op: &PauliSum, cap: usize) -> Result<DenseOperator> {
    check_cap(op.n_qubits(), cap)?;
    let dim = 1usize << op.n_qubits();
    let mut m = DMatrix::zeros(dim, dim);
    for (s, c) in op.terms() {
        accumulate_string(&mut m, s, *c);
    }
    Ok(DenseOperator {
        n_qubits: op.n_qubits(),
        entries: m,
    })
}

/// Dense matrix of a fermionic sum, through Jordan-Wigner.
pub fn fermi_to_dense(op: &FermiSum) -> Result<DenseOperator> {
    check_cap(op.n_orbitals(), qubit_cap())?;
    pauli_to_dense(&jordan_wigner(op, op.n_orbitals())?)
}

/// Exact `e^{iθG} H e^{-iθG}`; rejects non-Hermitian `G` and checks unitarity.
pub fn conjugate_exact(g: &DenseOperator, h: &DenseOperator, theta: f64) -> Result<DenseOperator> {
    g.check(h)?;
    let u = g.exp_i(theta)?;
    let residual = u
        .mul(&u.adjoint())?
        .sub(&DenseOperator::identity(g.n_qubits))?
        .entries
        .iter()
        .map(|e| e.norm())
        .fold(0.0, f64::max);
    if residual > 1e-10 {
        return Err(Error::InvalidInput(format!(
            "unitarity residual {residual:.3e} exceeds 1e-10"
        )));
    }
    u.mul(h)?.mul(&u.adjoint())
}

pub fn spectrum(g: &DenseOperator) -> Result<Vec<f64>> {
    g.spectrum()
}

/// Frobenius norm of `P_left O P_right`.
pub fn sandwich_norm(left: &DenseOperator, o: &DenseOperator, right: &DenseOperator) -> Result<f64> {
    Ok(left.mul(o)?.mul(right)?.frobenius_norm())
}

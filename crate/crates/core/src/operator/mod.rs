//! Exact operator algebra: Pauli strings and sums, normal-ordered fermionic
//! strings and sums, and the Jordan-Wigner map between them.

pub mod fermion;
pub mod jordan_wigner;
pub mod pauli;
pub mod text;

pub use fermion::{fermi_normal_order, normal_order_word, parse_word, FermiString, FermiSum, LadderOp, LocalAction};
pub use jordan_wigner::jordan_wigner;
pub use pauli::{PauliString, PauliSum};

/// Coefficients below this magnitude are dropped after every sum or product.
pub const DROP_TOLERANCE: f64 = 1e-12;

use num_complex::Complex64;

use crate::error::Result;

/// The linear-algebra surface the adjoint machinery needs from an operator
/// representation. Inner products and norms are taken in the representation's
/// own coefficient basis; for [`PauliSum`] that is the normalized Frobenius one.
pub trait Operator: Clone + std::fmt::Debug {
    /// Zero operator on the same register.
    fn zero_like(&self) -> Self;
    /// Identity operator on the same register.
    fn identity_like(&self) -> Self;
    fn scale(&self, alpha: Complex64) -> Self;
    /// `self + alpha * other`.
    fn axpy(&self, alpha: Complex64, other: &Self) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn commutator(&self, other: &Self) -> Result<Self>;
    fn anticommutator(&self, other: &Self) -> Result<Self>;
    /// Conjugate-linear in `self`.
    fn inner(&self, other: &Self) -> Complex64;
    fn norm(&self) -> f64 {
        self.inner(self).re.max(0.0).sqrt()
    }
    fn hermiticity_deviation(&self) -> f64;
    fn is_zero(&self) -> bool;
}

impl Operator for PauliSum {
    fn zero_like(&self) -> Self {
        PauliSum::zero(self.n_qubits())
    }
    fn identity_like(&self) -> Self {
        PauliSum::identity(self.n_qubits())
    }
    fn scale(&self, alpha: Complex64) -> Self {
        PauliSum::scale(self, alpha)
    }
    fn axpy(&self, alpha: Complex64, other: &Self) -> Result<Self> {
        PauliSum::axpy(self, alpha, other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        PauliSum::mul(self, other)
    }
    fn commutator(&self, other: &Self) -> Result<Self> {
        PauliSum::commutator(self, other)
    }
    fn anticommutator(&self, other: &Self) -> Result<Self> {
        PauliSum::anticommutator(self, other)
    }
    fn inner(&self, other: &Self) -> Complex64 {
        PauliSum::inner(self, other)
    }
    fn norm(&self) -> f64 {
        self.frobenius_norm()
    }
    fn hermiticity_deviation(&self) -> f64 {
        PauliSum::hermiticity_deviation(self)
    }
    fn is_zero(&self) -> bool {
        self.is_empty()
    }
}

impl Operator for FermiSum {
    fn zero_like(&self) -> Self {
        FermiSum::zero(self.n_orbitals())
    }
    fn identity_like(&self) -> Self {
        FermiSum::identity(self.n_orbitals())
    }
    fn scale(&self, alpha: Complex64) -> Self {
        FermiSum::scale(self, alpha)
    }
    fn axpy(&self, alpha: Complex64, other: &Self) -> Result<Self> {
        FermiSum::axpy(self, alpha, other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        FermiSum::mul(self, other)
    }
    fn commutator(&self, other: &Self) -> Result<Self> {
        FermiSum::commutator(self, other)
    }
    fn anticommutator(&self, other: &Self) -> Result<Self> {
        FermiSum::anticommutator(self, other)
    }
    fn inner(&self, other: &Self) -> Complex64 {
        self.terms()
            .map(|(s, c)| c.conj() * other.coeff(s))
            .sum()
    }
    fn norm(&self) -> f64 {
        self.coefficient_norm()
    }
    fn hermiticity_deviation(&self) -> f64 {
        FermiSum::hermiticity_deviation(self)
    }
    fn is_zero(&self) -> bool {
        self.is_empty()
    }
}

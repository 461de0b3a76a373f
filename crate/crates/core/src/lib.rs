//! Exact unitary conjugation `e^{iθG} H e^{-iθG}` of many-body operators as
//! finite polynomials in the adjoint map `ad_{iG}`.
//!
//! The crate covers Pauli and fermionic operator algebra ([`operator`]), the
//! nested-commutator machinery with closure detection and Vandermonde
//! coefficient solves ([`adjoint`]), involutory and unitary coupled-cluster
//! generators with block classification ([`generators`]), Lie-algebraic
//! transforms ([`lie`]) and a dense-matrix ground truth ([`oracle`]).

pub mod adjoint;
pub mod error;
pub mod generators;
pub mod lie;
mod linalg;
pub mod operator;
pub mod oracle;

pub use error::{Error, Result};
pub use operator::{FermiString, FermiSum, LadderOp, PauliString, PauliSum};

//! Transforms generated by finite-dimensional Lie algebras: orbital
//! rotations in `u(N)`, module representations, and Heisenberg-algebra
//! displacements.

pub mod heisenberg;
pub mod module;
pub mod orbital;

pub use heisenberg::{
    conjugate_by_series, heisenberg_displace, linear_generator, Monomial, WeylPolynomial,
};
pub use module::{creation_basis, module_adjoint_matrix, module_exponential, module_transform};
pub use orbital::{
    format_matrix, parse_matrix, rotate_annihilation, rotate_by_substitution, rotate_creation,
    rotate_tensors, ComplexMatrix, ElectronicTensors, OrbitalRotation,
};

//! Generators with finite spectra: involutory Pauli generators and unitary
//! coupled-cluster excitations, with the block classification that fixes the
//! number of nested commutators for a UCC fragment.

pub mod classify;
pub mod involutory;
pub mod table1;
pub mod ucc;

pub use classify::{
    classify_ucc_pair, pg_sandwich_norms, ucc_fragment_coefficients, ucc_fragment_transform,
    BlockFamily, BlockPattern, CaseLabel,
};
pub use involutory::{pauli_generator_transform, InvolutoryGenerator, InvolutoryKind};
pub use ucc::{build_ucc, UCCGenerator, UccInvariants};

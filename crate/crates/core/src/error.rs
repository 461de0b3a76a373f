use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("operator is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("spin-orbital index {index} out of range for {n_orbitals} orbitals")]
    IndexOutOfRange { index: usize, n_orbitals: usize },

    #[error("no algebraic closure found up to degree {max_degree} (last residual {residual:.3e})")]
    NoClosureWithinBound { max_degree: usize, residual: f64 },

    #[error("Vandermonde system is singular")]
    SingularSystem,

    #[error("coefficient imaginary residue {residue:.3e} exceeds tolerance")]
    ComplexResidueTooLarge { residue: f64 },

    #[error("difference {delta} is not a member of the difference set")]
    DeltaNotInSet { delta: f64 },

    #[error("operators do not anticommute (norm of anticommutator {norm:.3e})")]
    NotAnticommuting { norm: f64 },

    #[error("commutator leaves the module span (residual {residual:.3e})")]
    NotClosed { residual: f64 },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("oracle dimension cap exceeded: {requested} qubits > cap {cap}")]
    OracleCapExceeded { requested: usize, cap: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

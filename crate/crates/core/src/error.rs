use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("arity mismatch: expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("arity {0} is not supported here")]
    UnsupportedArity(usize),

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("indices {0:?} are not strictly increasing")]
    NotCanonical(Vec<usize>),

    #[error("nonzero value assigned to repeated arguments {0:?}")]
    SkewViolation(Vec<usize>),

    #[error("linear form is not a trace: it does not vanish on the bracket of {0:?}")]
    NotATrace(Vec<usize>),

    #[error("linear map is not a derivation: defect on arguments {0:?}")]
    NotADerivation(Vec<usize>),

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("cochain is not a cocycle: coboundary nonzero at {0}")]
    NotACocycle(String),

    #[error("cohomology degree {0} is not supported (only 1 and 2)")]
    UnsupportedDegree(usize),

    #[error("algebra does not satisfy the fundamental identity ({0} violations)")]
    NotNLie(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),

    #[error("parameters {0} are not admissible for this catalog entry")]
    Inadmissible(String),

    #[error("catalog: {0}")]
    Catalog(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

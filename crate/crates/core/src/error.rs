use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} = {value} exceeds the supported maximum of {max}")]
    SizeLimitExceeded {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("input states are not orthonormal (|<s_{i}|s_{j}> - delta_ij| = {deviation:e})")]
    NonOrthonormalInput { i: usize, j: usize, deviation: f64 },

    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    UnnormalizedState { norm_sqr: f64 },

    #[error("eigenvalue {0} is assigned to more than one class")]
    DuplicateEigenvalue(f64),

    #[error("expected {expected} eigenvalues (one per class), got {found}")]
    EigenvalueCount { expected: usize, found: usize },

    #[error("label width {found} does not match expected width {expected}")]
    InvalidLabelWidth { expected: usize, found: usize },

    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("expected a two-qubit state of dimension 4, found dimension {0}")]
    WrongDimension(usize),

    #[error("expected a function of arity {expected}, found arity {found}")]
    WrongArity { expected: usize, found: usize },

    #[error("invalid bit string: {0}")]
    InvalidBitString(String),

    #[error("invalid sign vector entry {0}; entries must be -1 or +1")]
    InvalidSign(i64),

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("{0} must be at least 1")]
    ZeroWidth(&'static str),

    #[error("observables can only be built from partitions of basis states")]
    NotBasisPartition,
}

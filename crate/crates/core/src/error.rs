use thiserror::Error;

/// Errors raised by field construction, subspace calculus and the matching routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{k} exceeds the supported size 2^32")]
    FieldTooLarge { p: u64, k: usize },
    #[error("modulus has {got} coefficients, expected {expected} for degree {k}")]
    ModulusLength {
        k: usize,
        expected: usize,
        got: usize,
    },
    #[error("modulus is not monic")]
    ModulusNotMonic,
    #[error("coefficient {value} out of range for p = {p}")]
    CoefficientOutOfRange { value: u64, p: u64 },
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u64 },
    #[error("operands live in different fields or ambient spaces")]
    MismatchedField,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("{d} does not divide the extension degree {k}")]
    NotADivisor { d: usize, k: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("subspace is not contained in the reference space")]
    NotContained,
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("basis does not span the given subspace")]
    BasisMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("enumeration of {predicted} items exceeds the cap {cap}")]
    GuardExceeded { predicted: u128, cap: u128 },
    #[error("size mismatch: |A| = {left}, |B| = {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("operation requires a field of prime degree, got degree {0}")]
    CompositeDegree(usize),
    #[error("invalid instance: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

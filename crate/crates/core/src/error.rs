use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("variable count mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands belong to different polynomial rings")]
    RingMismatch,
    #[error("exponent overflow: {0}")]
    ExponentOverflow(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("{q} is not a power of the characteristic {p}")]
    NotFrobeniusPower { q: u64, p: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("modulus is not homogeneous")]
    NotHomogeneous,
    #[error("length of R/{0} is infinite (ideal is not m-primary)")]
    InfiniteLength(String),
    #[error("Hilbert function not yet polynomial on the sampled range: {0}")]
    NotYetStable(String),
    #[error("containment hypothesis violated: {0}")]
    NotContained(String),
    #[error("no stabilization within n_max = {0}")]
    NoStabilization(usize),
    #[error("window too small: {0}")]
    InsufficientWindow(String),
    #[error("not a linear system of parameters: {0}")]
    NotLsop(String),
    #[error("non-linear form: {0}")]
    NotLinear(String),
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

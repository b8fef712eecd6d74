use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{f} exceeds the configured cap {cap}")]
    FieldTooLarge { p: u32, f: u32, cap: u64 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("{m} does not divide the field degree {f}")]
    NotADivisor { m: u32, f: u32 },
    #[error("group closure exceeded the cap of {cap} elements (reached {reached})")]
    GroupTooLarge { cap: usize, reached: usize },
    #[error("action has {points} points, above the cap of {cap}")]
    TooManyPoints { cap: usize, points: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element is not in the group")]
    NotInGroup,
    #[error("action is not faithful")]
    NotFaithful,
    #[error("action is not transitive")]
    NotTransitive,
    #[error("instance too large for the brute-force oracle: {0}")]
    OracleGuard(String),
    #[error("inequality violated: {0}")]
    InequalityViolation(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

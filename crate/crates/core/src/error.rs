use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is reducible over the rationals")]
    Reducible,
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("not a basis: rows are linearly dependent")]
    NotABasis,
    #[error("prime {0} is ramified")]
    Ramified(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{root} is not a root of the defining polynomial modulo {p}")]
    NotARoot { p: u64, root: u64 },
    #[error("ideals are not coprime")]
    NotCoprime,
    #[error("zero ideal has no inverse")]
    ZeroIdeal,
    #[error("element is not integral")]
    NonIntegral,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("pseudo-matrix is not square")]
    NotSquare,
    #[error("module is zero")]
    ZeroModule,
    #[error("degenerate code: {0}")]
    DegenerateCode(String),
    #[error("gamma must lie in (0, 1), got {0}")]
    GammaOutOfRange(f64),
    #[error("delta must lie in (1/4, 1)")]
    DeltaOutOfRange,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("ball of radius {0} contains no messages")]
    EmptyBall(String),
    #[error("invalid received word: {0}")]
    InvalidWord(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("cannot corrupt {errors} of {n} positions")]
    TooManyErrors { errors: usize, n: usize },
    #[error("lattice dimension {dim} exceeds the configured limit {limit}")]
    TooLarge { dim: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid prime {0}")]
    InvalidPrime(String),

    #[error("variable count mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("coefficient budget exceeded at step {step}: {bits} bits > {limit}")]
    Budget { step: usize, bits: u64, limit: u64 },

    #[error("map not dominant-capable: all components are constant")]
    ConstantMap,

    #[error("degenerate composition: every coordinate vanishes")]
    DegenerateComposition,

    #[error("orbit hits indeterminacy at step {0}")]
    Indeterminate(usize),

    #[error("boundary analysis requires affine extension")]
    NotAffineExtension,

    #[error("parse error at column {column}: {message}\n{caret}")]
    Parse {
        column: usize,
        message: String,
        caret: String,
    },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("profile too short: need at least {required} points, have {actual}")]
    ProfileTooShort { required: usize, actual: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("singular matrix: det(A) = 0")]
    SingularMatrix,

    #[error("root finder did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("point is not in the neighborhood: {0}")]
    NotInNeighborhood(String),

    #[error("unknown catalog entry {0}")]
    UnknownCatalogEntry(String),

    #[error("table condition violated for case {case}: {condition}")]
    ConstraintViolation { case: String, condition: String },
}

pub type Result<T> = std::result::Result<T, Error>;

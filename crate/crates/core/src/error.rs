use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// Verdicts ("does not split", "not diagonalizable") are never errors; they
/// are ordinary return values of the pipeline.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible number-field towers")]
    IncompatibleTowers,
    #[error("value is not real: {0}")]
    NotReal(String),
    #[error("no real embedding for generator `{0}`")]
    NoRealEmbedding(String),
    #[error("invalid tower generator: {0}")]
    InvalidGenerator(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("variable sets differ")]
    VarsetMismatch,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix dimensions do not match")]
    ShapeMismatch,
    #[error("matrix is not normal (A A* != A* A)")]
    NotNormal,
    #[error("value is not in the local ring at the origin: {0}")]
    NotLocal(String),
    #[error("series is not a unit (zero constant term)")]
    NonUnit,
    #[error("unsupported input size: {0}")]
    UnsupportedSize(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("could not reach shape position after {0} attempts")]
    ShapePosition(usize),
    #[error("no associated prime satisfies the contraction condition")]
    NoPrime,
    #[error("degenerate presentation: {0}")]
    Degenerate(String),
    #[error("iteration budget exhausted in stage `{stage}` after {steps} steps")]
    Budget { stage: String, steps: usize },
    #[error("Jacobian is rank deficient (rank {rank}, need {needed})")]
    RankDeficient { rank: usize, needed: usize },
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

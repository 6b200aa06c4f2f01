use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("simple reflection index {index} out of range 0..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("weight has {found} labels, algebra needs {expected}")]
    WrongArity { expected: usize, found: usize },

    #[error("weight {0} is not dominant integral")]
    NotDominant(String),

    #[error("level mismatch: expected level {expected}, found {found}")]
    LevelMismatch { expected: i64, found: i64 },

    #[error("insufficient truncation: need degree {needed}, have {available} (short by {})", needed - available)]
    InsufficientTruncation { needed: i64, available: i64 },

    #[error("window starting at degree {lo} clips a nonzero coefficient at degree {degree}")]
    WindowClipsSupport { lo: i64, degree: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid sl2 coordinates: {0}")]
    InvalidCoordinates(String),

    #[error("truncation bound not certifiable: {0}")]
    NotCertifiable(String),

    /// A computation produced a value that a theorem rules out.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    #[error("cache: {0}")]
    Cache(String),
}

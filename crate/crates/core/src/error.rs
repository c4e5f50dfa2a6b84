use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GerbeError {
    #[error("invalid Lie type {family}{rank}")]
    InvalidLieType { family: char, rank: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("lattice is not contained in the ambient lattice")]
    NotSublattice,

    #[error("sublattice has infinite index")]
    InfiniteIndex,

    #[error("singular Gram matrix")]
    SingularGram,

    #[error("level {level} is not a multiple of the basic level {ell_b}")]
    LevelNotMultiple { level: u64, ell_b: u64 },

    #[error("group of order {0} exceeds the enumeration limit")]
    GroupTooLarge(usize),

    #[error("fundamental level data, line {line}: {msg}")]
    LevelData { line: usize, msg: String },

    /// A mathematical invariant failed; always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, GerbeError>;

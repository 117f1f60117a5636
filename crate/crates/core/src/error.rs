use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible groups: rank {left} vs rank {right}")]
    RankMismatch { left: u8, right: u8 },

    #[error("group rank must be between 1 and 16, got {0}")]
    InvalidRank(usize),

    #[error("so(n) needs n >= 3, got n = {0}")]
    AlgebraTooSmall(usize),

    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkew { row: usize, col: usize },

    #[error("form is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("partition {partition:?} sums to {sum}, expected n = {n}")]
    InvalidPartition {
        partition: [usize; 4],
        sum: usize,
        n: usize,
    },

    #[error("group element {0} is not a grading label")]
    UnknownComponent(String),

    #[error("vector has support outside m at basis index {0}")]
    SupportOutsideM(usize),

    #[error("form is degenerate on component {0}")]
    Degenerate(String),

    #[error("form is not positive definite on component {0}")]
    NotPositiveDefinite(String),

    #[error("m-basis is not orthonormal under the metric at ({0}, {1})")]
    NotOrthonormal(usize, usize),

    #[error("generator does not satisfy E^3 = -E; use the numeric exponential instead")]
    NotCubicInvolution,

    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

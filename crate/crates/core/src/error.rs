use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("invalid direction: {0}")]
    InvalidDirection(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("matrix must be {dim}x{dim}, got {rows}x{cols}")]
    MatrixShape { dim: usize, rows: usize, cols: usize },

    #[error("scale factor must be non-negative, got {0}")]
    NegativeScale(f64),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("{0} requires sampling: exact engine needs polytopal bodies in dimension 1 or 2")]
    NeedsSampling(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

use hechain_scalar::ScalarError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("index {index} out of range for rank {rank}")]
    OutOfRange { index: usize, rank: usize },
    #[error("element does not lie in the level-{0} subalgebra")]
    NotInSubalgebra(usize),
    #[error("unsupported trace degree {0}")]
    TraceDegree(i32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate boundary: {0}")]
    DegenerateBoundary(String),
    #[error("scalar error: {0}")]
    Scalar(#[from] ScalarError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

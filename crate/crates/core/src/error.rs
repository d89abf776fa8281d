use thiserror::Error;

use crate::scalar::RingContext;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {op} of {lhs:?} and {rhs:?}")]
    DimensionMismatch { op: &'static str, lhs: (usize, usize), rhs: (usize, usize) },
    #[error("operands live in different rings: {0:?} vs {1:?}")]
    ContextMismatch(RingContext, RingContext),
    #[error("matrix is {0}x{1}, expected square")]
    NonSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("matrix has rank zero")]
    RankZero,
    #[error("block D is numerically singular (rank estimate {rank} of {expected})")]
    SingularBlock { rank: usize, expected: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Nonexistence of a requested object, as opposed to misuse or bad input.
    pub fn is_nonexistence(&self) -> bool {
        matches!(self, Error::NoSolution(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

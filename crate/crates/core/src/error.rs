use thiserror::Error;

/// Errors raised by the algebra kernel and the verification layers above it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,

    #[error("index {index} out of range 1..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid cell or column: {0}")]
    InvalidCell(String),

    #[error("guardrail exceeded: {0}")]
    Guardrail(String),

    /// `(∂_i − ∂_j)p` was not divisible by `x_i − x_j`.
    #[error("L_m image is not polynomial: (d/dx{i} - d/dx{j})p is not divisible by x{i} - x{j}")]
    NonPolynomial { i: usize, j: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

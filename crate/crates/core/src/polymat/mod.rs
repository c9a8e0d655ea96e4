//! Exact rationals, truncated polynomials and matrices over both.

mod matrix;
mod poly;
mod polymatrix;
mod rational;

pub use matrix::{RationalMatrix, Rref, Subspace};
pub use poly::{total_degree, RingContext, TermDoc, TruncPoly};
pub use polymatrix::{PolyMatrix, PolyMatrixDoc};
pub use rational::{ParseRationalError, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("operands live in different ring contexts")]
    ContextMismatch,
    #[error("truncation bound must be positive")]
    InvalidBound,
    #[error("ring context has no variables")]
    NoVariables,
    #[error("exponent vector has {found} entries, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("monomial degree reaches the truncation bound")]
    BeyondBound,
    #[error("vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rows have different lengths")]
    Ragged,
    #[error("matrix shapes are incompatible")]
    ShapeMismatch,
}

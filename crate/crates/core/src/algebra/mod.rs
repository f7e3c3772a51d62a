//! Exact arithmetic in the differential field K = Q(x) and matrices over it.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here can be shared freely across threads.

mod matrix;
mod modular;
mod poly;
mod rat;
mod ratfn;

pub mod linalg;

pub use matrix::{common_denominator, kron, mat_from_rat, MatRF};
pub use poly::Poly;
pub use rat::{positive_divisors, Rat};
pub use ratfn::RatFn;

/// Errors from field and matrix arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by zero in Q(x)")]
    DivisionByZero,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is singular over Q(x)")]
    SingularMatrix,
    #[error("evaluation point {0} is a pole")]
    PoleAtEvaluationPoint(Rat),
    #[error("matrix must have at least one row")]
    EmptyMatrix,
}

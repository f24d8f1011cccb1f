//! Exact arithmetic: rationals, cyclotomic fields and dense matrices over them.

mod cyclotomic;
mod matrix;
mod root;

use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, sqrt_prime, Cyclotomic};
pub use matrix::{solve_linear_space, CycMatrix};
pub use root::UnitRoot;

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {to} is not a multiple of {from}")]
    BadEmbedding { from: u32, to: u32 },
    #[error("value is not a root of unity")]
    NotRootOfUnity,
    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("cannot parse cyclotomic literal: {0}")]
    Parse(String),
}

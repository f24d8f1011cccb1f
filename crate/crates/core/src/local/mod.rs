//! Finite-level arithmetic of `Q_p` and its quadratic extensions: unit
//! groups, characters, root numbers and monomial Weil-group representations.

mod chars;
mod epsilon;
mod field;
mod monomial;
mod parity;
mod properties;
mod units;

use thiserror::Error;

pub use chars::{psi0, AddChar, MultChar};
pub use epsilon::{epsilon_character, lambda_constant};
pub use properties::{epsilon_suite, ggp_suite, pi_values, GgpOutcome, Identity};
pub use parity::{generate_corpus, Corpus, DirectSumReport, PtbReport, SerreReport, TermPools};
pub use monomial::{LocalSetup, MonomialRep, ResPiece, Term};
pub use field::{Elt, ExtKind, Extensions, LocalField, Residue, RingSpec, Q};
pub use units::UnitGroup;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("{0} is not an odd prime")]
    Prime(i64),
    #[error("level {needed} needed, working level is {have}")]
    Level { needed: u32, have: u32 },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0}")]
    WrongType(String),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

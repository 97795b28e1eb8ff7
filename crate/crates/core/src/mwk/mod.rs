//! Milnor–Witt K-theory symbols and their evaluation in `G^n(F)`.

mod eval;
mod expr;

pub use eval::{mw_eval, mw_eval_in_degree, mw_relation_check, mw_to_milnor, mw_to_witt, Generator, GnValue, MilnorRep, RelationInstance};
pub use expr::{mw_product, MwExpr, Word};

use crate::qform::QformError;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum MwkError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("terms of degrees {0} and {1} cannot be added")]
    MixedDegrees(i64, i64),
    #[error("symbol slots must be nonzero in the base field")]
    ZeroSlot,
    #[error("evaluation over {0} is not supported")]
    UnsupportedBase(String),
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
    #[error("integer coefficient out of range")]
    Overflow,
    #[error(transparent)]
    Qform(#[from] QformError),
}

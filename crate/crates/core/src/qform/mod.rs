//! Diagonal forms, Witt classes and second residues.

mod field;
mod residue;
mod witt;

pub use field::{BaseField, FieldElem};
pub use residue::{parse_place, residue_second, witt_equal_via_residues, WittVerdict};
pub use witt::{
    form_negate, form_scale, form_sum, form_tensor, in_fundamental_power, pfister, witt_decompose, DiagonalForm,
    FormJson, WittClass,
};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum QformError {
    #[error("Witt classes over {0} are not computed")]
    UnsupportedBase(String),
    #[error("forms live over different base fields")]
    BaseMismatch,
    #[error("form entries and scalars must be nonzero")]
    ZeroEntry,
    #[error("{0} is not an odd prime below 2^31")]
    InvalidPrime(u64),
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("unsupported place: {0}")]
    UnsupportedPlace(String),
}

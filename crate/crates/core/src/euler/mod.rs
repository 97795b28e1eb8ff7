//! The φ-class of a unimodular row, computed as half-differences of residue signatures.
//!
//! For a prepared row `(a₁, …, a_{d+1})` let `B = A/(a₂, …, a_{d+1})` and let `λ`
//! be the Grothendieck residue on `B`. The class on a component is
//! `(σ(λ(h·a₁·fg)) − σ(λ(h·fg)))/2`, where `h` selects the component by sign.

mod class;
mod local;
mod verdict;

pub use class::{
    phi_additivity_check, phi_class, phi_class_with, AdditivityReport, ClassComputation, ClassOptions,
    ComponentSeparator, PointedClass, CONVENTION,
};
pub use local::{local_form, local_form_with, signature, LocalForm};
pub use verdict::{compare_rows, freeness_verdict, Comparison, Verdict, VerdictKind};

use crate::linalg::LinalgError;
use crate::ring::RingError;
use crate::umrow::UmrowError;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum EulerError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Umrow(#[from] UmrowError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{0}")]
    Precondition(String),
    #[error("the tail does not cut out finitely many points")]
    NotZeroDimensional,
    #[error("degenerate residue form: {0}")]
    Degenerate(String),
    #[error("signatures {plain} and {twisted} differ by an odd number")]
    Parity { plain: i64, twisted: i64 },
    #[error("component separator: {0}")]
    Separator(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
}

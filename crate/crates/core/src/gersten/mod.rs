//! Explicit cycles on punctured affine space, their residues at the origin, and
//! the identity `(t,⟨−1,t⟩) + (1−t,⟨−1,1−t⟩) = (t(1−t),⟨−1,t(1−t)⟩)` in `G¹(ℚ(t))`.

mod cycle;
mod sum_identity;
mod table;

use std::fmt;

use serde::Serialize;

pub use cycle::{boundary_at_origin, xi_cycle, BoundaryValue, ToyCycle, LINE_VAR};
pub use sum_identity::{eq1_check, eq1_identity_check, eq1_perturbations, Eq1Report};
pub use table::{punctured_table, TableEntry};

use crate::qform::QformError;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum GerstenError {
    #[error("punctured affine space needs n ≥ 1, got {0}")]
    BadDimension(i64),
    #[error("cycle is not supported on the coordinate line: {0}")]
    Support(String),
    #[error("pair is not in G¹: {0}")]
    Incompatible(String),
    #[error(transparent)]
    Qform(#[from] QformError),
}

/// `± x_{i₁} ∧ … ∧ x_{i_k}` with strictly increasing indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistTag {
    pub sign: i8,
    pub indices: Vec<usize>,
}

impl TwistTag {
    /// `Kos(x_a, …, x_b)`.
    pub fn koszul(range: std::ops::RangeInclusive<usize>) -> Self {
        TwistTag { sign: 1, indices: range.collect() }
    }

    /// `self ∧ other`, sorted by transpositions; zero (`None`) if an index repeats.
    pub fn wedge(&self, other: &TwistTag) -> Option<TwistTag> {
        let mut idx: Vec<usize> = self.indices.iter().chain(&other.indices).copied().collect();
        let mut sign = self.sign * other.sign;
        for i in 1..idx.len() {
            let mut j = i;
            while j > 0 && idx[j - 1] > idx[j] {
                idx.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(TwistTag { sign, indices: idx })
    }
}

impl fmt::Display for TwistTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.indices.iter().map(|i| format!("x{i}")).collect();
        let sign = if self.sign < 0 { "-" } else { "" };
        write!(f, "{sign}Kos({})", names.join(","))
    }
}

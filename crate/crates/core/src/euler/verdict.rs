use serde::Serialize;

use super::class::{phi_class, ComponentSeparator, PointedClass};
use super::EulerError;
use crate::umrow::{verify_completion, CompletionMatrix, Row};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    Free,
    NotFree,
    ETrivialFree,
    Indeterminate,
    OutOfScope,
}

impl VerdictKind {
    pub fn label(self) -> &'static str {
        match self {
            VerdictKind::Free => "free",
            VerdictKind::NotFree => "not free",
            VerdictKind::ETrivialFree => "E-trivial hence free",
            VerdictKind::Indeterminate => "indeterminate under SL-action",
            VerdictKind::OutOfScope => "out of theorem scope",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub class: PointedClass,
    /// Outcome of checking a supplied completion, if any.
    pub completion_verified: Option<bool>,
}

impl Verdict {
    /// The class verdict sharpened by a verified completion, which makes the module free outright.
    pub fn combined(&self) -> &'static str {
        if self.completion_verified == Some(true) && self.kind != VerdictKind::NotFree {
            return VerdictKind::Free.label();
        }
        self.kind.label()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": self.kind.label(),
            "combined": self.combined(),
            "class": self.class.class,
            "components": self.class.components,
            "convention": self.class.convention,
            "completion_verified": self.completion_verified,
        })
    }
}

/// Freeness of the stably free module attached to `row`.
pub fn freeness_verdict(
    row: &Row,
    sep: &ComponentSeparator,
    completion: Option<&CompletionMatrix>,
) -> Result<Verdict, EulerError> {
    let ring = row.ring();
    let class = phi_class(row, sep)?;
    let completion_verified = match completion {
        Some(m) => Some(verify_completion(row, m)?.verified()),
        None => None,
    };
    let kind = if !(ring.rational && ring.trivial_canonical) {
        VerdictKind::OutOfScope
    } else if ring.dim() % 2 == 0 {
        if class.is_zero() {
            VerdictKind::Free
        } else {
            VerdictKind::NotFree
        }
    } else if class.is_zero() {
        VerdictKind::ETrivialFree
    } else {
        VerdictKind::Indeterminate
    };
    if kind == VerdictKind::NotFree && completion_verified == Some(true) {
        return Err(EulerError::Inconsistent("a completable row has nonzero class in even dimension".into()));
    }
    Ok(Verdict { kind, class, completion_verified })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Comparison {
    /// Different classes: not elementarily equivalent.
    Distinct,
    /// Equal classes in dimension ≥ 3, where the class is a complete invariant.
    Equivalent,
    /// Equal classes where the class is not known to be complete.
    Undetermined,
}

impl Comparison {
    pub fn label(self) -> &'static str {
        match self {
            Comparison::Distinct => "not E-equivalent",
            Comparison::Equivalent => "E-equivalent",
            Comparison::Undetermined => "undetermined",
        }
    }
}

pub fn compare_rows(a: &Row, b: &Row, sep: &ComponentSeparator) -> Result<(Comparison, PointedClass, PointedClass), EulerError> {
    if a.ring() != b.ring() {
        return Err(EulerError::Precondition("rows live over different rings".into()));
    }
    let ca = phi_class(a, sep)?;
    let cb = phi_class(b, sep)?;
    let ring = a.ring();
    let kind = if ca != cb {
        Comparison::Distinct
    } else if ring.dim() >= 3 && ring.rational && ring.trivial_canonical {
        Comparison::Equivalent
    } else {
        Comparison::Undetermined
    };
    Ok((kind, ca, cb))
}

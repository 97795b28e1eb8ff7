use serde_json::json;

use super::GerstenError;
use crate::qform::{form_sum, parse_place, witt_equal_via_residues, BaseField, DiagonalForm, FieldElem, WittVerdict};
use crate::ring::upoly::{Place, RatFunc};

const VAR: &str = "t";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eq1Report {
    pub lhs_units: Vec<RatFunc>,
    pub rhs_unit: RatFunc,
    /// The product of the left units equals the right unit exactly.
    pub milnor_equal: bool,
    pub witt: WittVerdict,
}

impl Eq1Report {
    /// `"equal"`, `"unequal"` or `"undecided"`.
    pub fn verdict(&self) -> &'static str {
        match (self.milnor_equal, &self.witt) {
            (false, _) | (_, WittVerdict::Unequal { .. }) => "unequal",
            (true, WittVerdict::Equal { .. }) => "equal",
            _ => "undecided",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lhs": self.lhs_units.iter().map(|u| u.show(VAR)).collect::<Vec<_>>(),
            "rhs": self.rhs_unit.show(VAR),
            "milnor_equal": self.milnor_equal,
            "witt": self.witt,
            "verdict": self.verdict(),
        })
    }
}

fn minus_one_u(u: &RatFunc) -> Result<DiagonalForm, GerstenError> {
    let base = BaseField::Functions(VAR.into());
    Ok(DiagonalForm::new(base, vec![FieldElem::Fun(RatFunc::from_int(-1)), FieldElem::Fun(u.clone())])?)
}

/// Compares `Σ (u_i, ⟨−1, u_i⟩)` with `(v, ⟨−1, v⟩)` in `G¹(ℚ(t))`.
pub fn eq1_check(lhs_units: &[RatFunc], rhs_unit: &RatFunc, factor_base: &[Place]) -> Result<Eq1Report, GerstenError> {
    let product = lhs_units.iter().fold(RatFunc::from_int(1), |acc, u| &acc * u);
    let mut lhs = DiagonalForm::zero(BaseField::Functions(VAR.into()));
    for u in lhs_units {
        lhs = form_sum(&lhs, &minus_one_u(u)?)?;
    }
    let witt = witt_equal_via_residues(&lhs, &minus_one_u(rhs_unit)?, factor_base)?;
    Ok(Eq1Report { lhs_units: lhs_units.to_vec(), rhs_unit: rhs_unit.clone(), milnor_equal: product == *rhs_unit, witt })
}

fn default_base() -> Vec<Place> {
    ["t", "1-t"].iter().map(|p| parse_place(p, VAR).expect("linear place")).collect()
}

fn u(s: &str) -> RatFunc {
    RatFunc::parse(s, VAR).expect("literal unit")
}

/// `(t,⟨−1,t⟩) + (1−t,⟨−1,1−t⟩) = (t(1−t),⟨−1,t(1−t)⟩)`.
pub fn eq1_identity_check() -> Result<Eq1Report, GerstenError> {
    eq1_check(&[u("t"), u("1-t")], &u("t*(1-t)"), &default_base())
}

/// Wrong variants of the identity, each of which must come out unequal.
pub fn eq1_perturbations() -> Result<Vec<(String, Eq1Report)>, GerstenError> {
    let mut base = default_base();
    base.push(parse_place("1+t", VAR).expect("linear place"));
    Ok(vec![
        ("rhs t(1+t)".into(), eq1_check(&[u("t"), u("1-t")], &u("t*(1+t)"), &base)?),
        ("lhs without 1-t".into(), eq1_check(&[u("t")], &u("t*(1-t)"), &base)?),
        ("lhs without t".into(), eq1_check(&[u("1-t")], &u("t*(1-t)"), &base)?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_holds() {
        let r = eq1_identity_check().unwrap();
        assert!(r.milnor_equal);
        assert_eq!(r.verdict(), "equal", "{:?}", r.witt);
    }

    #[test]
    fn perturbations_fail() {
        for (name, r) in eq1_perturbations().unwrap() {
            assert_eq!(r.verdict(), "unequal", "{name}: {:?}", r.witt);
            assert_eq!(r.witt.name(), "unequal", "{name}");
        }
    }
}

//! Second residues on `W(ℚ(t))` and a partial Witt-equality test built on them.

use num_traits::Zero;
use serde::Serialize;

use super::field::{BaseField, FieldElem};
use super::witt::{form_negate, form_sum, DiagonalForm};
use super::QformError;
use crate::ring::upoly::{Place, RatFunc, UPoly};
use crate::Rational;

/// Parses a place of `ℚ(var)`: `infinity` or a nonconstant polynomial, normalized to be monic.
pub fn parse_place(text: &str, var: &str) -> Result<Place, QformError> {
    let t = text.trim();
    if t == "infinity" || t == "inf" {
        return Ok(Place::Infinity);
    }
    let p = UPoly::parse(t, var).map_err(|e| QformError::InvalidElement(format!("place '{t}': {e}")))?;
    Place::finite(&p).ok_or_else(|| QformError::UnsupportedPlace(format!("'{t}' is constant")))
}

fn function_var(f: &DiagonalForm) -> Result<&str, QformError> {
    match f.base() {
        BaseField::Functions(v) => Ok(v),
        other => Err(QformError::UnsupportedBase(other.name())),
    }
}

/// `∂_π`: entries `u·π^e` with `e` odd contribute `⟨ū⟩`; the result lives over `ℚ`.
///
/// Only degree-one places and the place at infinity are supported, where the residue field is `ℚ`.
pub fn residue_second(f: &DiagonalForm, place: &Place) -> Result<DiagonalForm, QformError> {
    let var = function_var(f)?;
    if place.degree() != 1 {
        return Err(QformError::UnsupportedPlace(format!(
            "{} has residue field of degree {}",
            place.show(var),
            place.degree()
        )));
    }
    let mut out = Vec::new();
    for e in f.entries() {
        let u = e.as_ratfunc().expect("function field entry");
        let (v, unit) = u.split_at(place);
        if v.rem_euclid(2) == 1 {
            let r = unit.residue_value(place).expect("unit at a rational place");
            out.push(FieldElem::Rat(r));
        }
    }
    DiagonalForm::new(BaseField::Rationals, out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum WittVerdict {
    Equal { reason: String },
    Unequal { reason: String },
    Undecided { reason: String },
}

impl WittVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            WittVerdict::Equal { .. } => "equal",
            WittVerdict::Unequal { .. } => "unequal",
            WittVerdict::Undecided { .. } => "undecided",
        }
    }
}

/// Why a form over `ℚ` cannot be hyperbolic, if a cheap invariant says so.
fn rational_obstruction(h: &DiagonalForm) -> Option<String> {
    if h.dim() % 2 == 1 {
        return Some("odd dimension".into());
    }
    if h.signature() != Some(0) {
        return Some(format!("signature {}", h.signature().unwrap_or(0)));
    }
    let d = h.signed_discriminant();
    (!BaseField::Rationals.is_square(&d)).then(|| format!("discriminant {} is not a square", h.base().show(&d)))
}

const SAMPLES: [(i64, i64); 14] =
    [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1), (-3, 1), (1, 3), (2, 3), (3, 2), (5, 2), (-3, 2)];

fn cancel_pairs(mut entries: Vec<RatFunc>, steps: &mut Vec<String>, var: &str) -> Vec<RatFunc> {
    'outer: loop {
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                let prod = -&(&entries[i] * &entries[j]);
                if prod.is_square() {
                    steps.push(format!("<{},{}> is hyperbolic", entries[i].show(var), entries[j].show(var)));
                    entries.remove(j);
                    entries.remove(i);
                    continue 'outer;
                }
            }
        }
        return entries;
    }
}

/// Tries to split `entries` into hyperbolic planes using `⟨a,b⟩ ≅ ⟨a+b, ab(a+b)⟩`.
fn split_hyperbolic(entries: Vec<RatFunc>, depth: usize, steps: &mut Vec<String>, var: &str) -> bool {
    let mark = steps.len();
    let entries = cancel_pairs(entries, steps, var);
    if entries.is_empty() {
        return true;
    }
    if depth > 0 {
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                let s = &entries[i] + &entries[j];
                if s.is_zero() {
                    continue;
                }
                let t = &(&entries[i] * &entries[j]) * &s;
                let mut next: Vec<RatFunc> =
                    entries.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, e)| e.clone()).collect();
                next.push(s.clone());
                next.push(t.clone());
                let here = steps.len();
                steps.push(format!(
                    "<{},{}> = <{},{}>",
                    entries[i].show(var),
                    entries[j].show(var),
                    s.show(var),
                    t.show(var)
                ));
                if split_hyperbolic(next, depth - 1, steps, var) {
                    return true;
                }
                steps.truncate(here);
            }
        }
    }
    steps.truncate(mark);
    false
}

fn strip_factor_base(mut p: UPoly, factor_base: &[Place]) -> UPoly {
    for place in factor_base {
        if let Place::Finite(pi) = place {
            loop {
                let (q, r) = p.divrem(pi);
                if !r.is_zero() {
                    break;
                }
                p = q;
            }
        }
    }
    p
}

/// Decides `f = g` in `W(ℚ(t))` when residues, signatures or an explicit splitting settle it.
pub fn witt_equal_via_residues(
    f: &DiagonalForm,
    g: &DiagonalForm,
    factor_base: &[Place],
) -> Result<WittVerdict, QformError> {
    if f.base() != g.base() {
        return Err(QformError::BaseMismatch);
    }
    let var = function_var(f)?.to_string();
    if f == g {
        return Ok(WittVerdict::Equal { reason: "identical forms".into() });
    }
    let h = form_sum(f, &form_negate(g))?;
    let mut notes = Vec::new();

    let mut places: Vec<Place> = Vec::new();
    for p in factor_base.iter().chain(std::iter::once(&Place::Infinity)) {
        if !places.contains(p) {
            places.push(p.clone());
        }
    }
    for place in &places {
        if place.degree() != 1 {
            notes.push(format!("place {} skipped (residue field not Q)", place.show(&var)));
            continue;
        }
        let r = residue_second(&h, place)?;
        if let Some(why) = rational_obstruction(&r) {
            return Ok(WittVerdict::Unequal {
                reason: format!("second residue at {} differs ({why})", place.show(&var)),
            });
        }
    }

    let disc = h.signed_discriminant();
    if !h.base().is_square(&disc) {
        return Ok(WittVerdict::Unequal { reason: format!("discriminants differ by {}", h.base().show(&disc)) });
    }

    let funcs: Vec<RatFunc> = h.entries().iter().map(|e| e.as_ratfunc().expect("function entry").clone()).collect();
    for (n, d) in SAMPLES {
        let c = Rational::new(n.into(), d.into());
        let vals: Option<Vec<Rational>> = funcs.iter().map(|u| u.eval(&c).filter(|v| !v.is_zero())).collect();
        let Some(vals) = vals else { continue };
        let sig: i64 = vals.iter().map(|v| if v > &Rational::zero() { 1 } else { -1 }).sum();
        if sig != 0 {
            return Ok(WittVerdict::Unequal { reason: format!("signature {sig} after specializing {var} = {c}") });
        }
    }

    let mut steps = Vec::new();
    if split_hyperbolic(funcs.clone(), 3, &mut steps, &var) {
        return Ok(WittVerdict::Equal { reason: format!("difference splits: {}", steps.join("; ")) });
    }

    for u in &funcs {
        for part in [u.num(), u.den()] {
            if !strip_factor_base(part.clone(), factor_base).is_constant() {
                notes.push(format!("entry {} does not factor over the factor base", u.show(&var)));
                break;
            }
        }
    }
    notes.push("no hyperbolic splitting found".into());
    Ok(WittVerdict::Undecided { reason: notes.join("; ") })
}

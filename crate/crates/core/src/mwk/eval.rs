use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::expr::{MwExpr, Word};
use super::MwkError;
use crate::qform::{in_fundamental_power, pfister, BaseField, DiagonalForm, FieldElem, WittClass};
use crate::Rational;

/// An element of `K^M_n(F)` modulo its uniquely divisible part.
///
/// `modulus = None` is ℤ (degree 0); `Some(m)` is ℤ/m, with `Some(1)` the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MilnorRep {
    modulus: Option<u64>,
    value: BigInt,
}

impl MilnorRep {
    fn new(modulus: Option<u64>, value: BigInt) -> Self {
        let value = match modulus {
            Some(m) => value.mod_floor(&BigInt::from(m)),
            None => value,
        };
        MilnorRep { modulus, value }
    }

    /// Group in which degree-`n` Milnor data over `base` is tracked.
    pub fn group(base: &BaseField, n: i64) -> Option<u64> {
        assert!(n >= 0, "negative Milnor degree");
        if n == 0 {
            return None;
        }
        Some(match base {
            BaseField::Reals => 2,
            BaseField::Fp(p) if n == 1 => p - 1,
            _ => 1,
        })
    }

    pub fn zero(base: &BaseField, n: i64) -> Self {
        MilnorRep::new(Self::group(base, n), BigInt::zero())
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn to_json(&self) -> Value {
        let group = match self.modulus {
            None => "Z".to_string(),
            Some(1) => "0".to_string(),
            Some(m) => format!("Z/{m}"),
        };
        json!({"group": group, "value": self.value.to_string()})
    }
}

/// An element of `G^n(F) = K^M_n(F) ×_{Ī^n(F)} I^n(F)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GnValue {
    base: BaseField,
    degree: i64,
    milnor: Option<MilnorRep>,
    witt: WittClass,
    compatible: bool,
}

fn require_decidable(base: &BaseField) -> Result<(), MwkError> {
    if base.is_decidable() {
        Ok(())
    } else {
        Err(MwkError::UnsupportedBase(base.name()))
    }
}

impl GnValue {
    fn build(base: &BaseField, degree: i64, milnor: Option<MilnorRep>, witt: WittClass) -> Result<Self, MwkError> {
        let mut v = GnValue { base: base.clone(), degree, milnor, witt, compatible: false };
        v.compatible = v.check_compatibility()?;
        Ok(v)
    }

    pub fn zero(base: &BaseField, degree: i64) -> Result<Self, MwkError> {
        require_decidable(base)?;
        let milnor = (degree >= 0).then(|| MilnorRep::zero(base, degree));
        Self::build(base, degree, milnor, WittClass::zero(base)?)
    }

    /// The integer `k` in degree 0: `(k, k·⟨1⟩)`.
    pub fn integer(base: &BaseField, k: &BigInt) -> Result<Self, MwkError> {
        require_decidable(base)?;
        let one = WittClass::of(&DiagonalForm::new(base.clone(), vec![base.one()])?)?;
        let kk = k.to_i64().ok_or(MwkError::Overflow)?;
        Self::build(base, 0, Some(MilnorRep::new(None, k.clone())), one.times(kk))
    }

    /// `[a] ↦ ({a}, ⟨−1, a⟩)`
    pub fn symbol(base: &BaseField, a: &Rational) -> Result<Self, MwkError> {
        require_decidable(base)?;
        let e = base.from_rational(a)?;
        if base.is_zero(&e) {
            return Err(MwkError::ZeroSlot);
        }
        let value = match base {
            BaseField::Reals => BigInt::from(u8::from(a < &Rational::zero())),
            BaseField::Fp(_) => BigInt::from(base.discrete_log(&e).expect("nonzero residue")),
            _ => BigInt::zero(),
        };
        let witt = WittClass::of(&DiagonalForm::new(base.clone(), vec![base.from_int(-1), e])?)?;
        Self::build(base, 1, Some(MilnorRep::new(MilnorRep::group(base, 1), value)), witt)
    }

    /// `η ↦ ⟨1⟩ ∈ W(F)` in degree −1.
    pub fn eta(base: &BaseField) -> Result<Self, MwkError> {
        require_decidable(base)?;
        let one = WittClass::of(&DiagonalForm::new(base.clone(), vec![base.one()])?)?;
        Self::build(base, -1, None, one)
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn milnor(&self) -> Option<&MilnorRep> {
        self.milnor.as_ref()
    }

    pub fn witt(&self) -> &WittClass {
        &self.witt
    }

    /// Whether the fiber-product condition held when the value was assembled.
    pub fn is_compatible(&self) -> bool {
        self.compatible
    }

    pub fn is_zero(&self) -> bool {
        self.witt.is_zero() && self.milnor.as_ref().is_none_or(MilnorRep::is_zero)
    }

    pub fn add(&self, other: &GnValue) -> Result<GnValue, MwkError> {
        if self.base != other.base {
            return Err(MwkError::Qform(crate::qform::QformError::BaseMismatch));
        }
        if self.degree != other.degree {
            return Err(MwkError::MixedDegrees(self.degree, other.degree));
        }
        let milnor = match (&self.milnor, &other.milnor) {
            (Some(a), Some(b)) => Some(MilnorRep::new(a.modulus, &a.value + &b.value)),
            _ => None,
        };
        Self::build(&self.base, self.degree, milnor, self.witt.add(&other.witt)?)
    }

    pub fn mul(&self, other: &GnValue) -> Result<GnValue, MwkError> {
        if self.base != other.base {
            return Err(MwkError::Qform(crate::qform::QformError::BaseMismatch));
        }
        let degree = self.degree + other.degree;
        let milnor = if degree < 0 {
            None
        } else {
            let value = match (&self.milnor, &other.milnor) {
                (Some(a), Some(b)) => &a.value * &b.value,
                // the Milnor image of anything involving η is zero
                _ => BigInt::zero(),
            };
            Some(MilnorRep::new(MilnorRep::group(&self.base, degree), value))
        };
        Self::build(&self.base, degree, milnor, self.witt.mul(&other.witt)?)
    }

    /// Image of the Milnor part under `s_n` in `Ī^n`, as a Witt class.
    fn s_n(&self) -> Result<WittClass, MwkError> {
        let n = self.degree;
        let m = self.milnor.as_ref().expect("nonnegative degree");
        let zero = WittClass::zero(&self.base)?;
        if m.is_zero() || m.modulus == Some(1) {
            return Ok(zero);
        }
        Ok(match &self.base {
            BaseField::Reals => {
                let slots = vec![self.base.from_int(-1); n as usize];
                WittClass::of(&pfister(&self.base, &slots)?)?
            }
            BaseField::Fp(p) => {
                let g = self.base.primitive_root().expect("prime field");
                let e = m.value.to_u64().expect("reduced exponent");
                let mut a = 1u64;
                for _ in 0..e {
                    a = a * g % p;
                }
                WittClass::of(&pfister(&self.base, &[FieldElem::Mod(a)])?)?
            }
            _ => zero,
        })
    }

    /// The fiber-product condition: Witt part in `I^n` and Milnor part mod 2 matching it in `Ī^n`.
    pub fn check_compatibility(&self) -> Result<bool, MwkError> {
        let n = self.degree;
        if n < 0 {
            return Ok(self.milnor.is_none());
        }
        let Some(m) = &self.milnor else { return Ok(false) };
        if m.modulus != MilnorRep::group(&self.base, n) {
            return Ok(false);
        }
        let nn = n as u32;
        if !in_fundamental_power(&self.witt, nn)? {
            return Ok(false);
        }
        if n == 0 {
            let rank_parity = m.value.mod_floor(&BigInt::from(2));
            return Ok(rank_parity == BigInt::from(self.witt.dim_parity()));
        }
        let diff = self.witt.sub(&self.s_n()?)?;
        Ok(in_fundamental_power(&diff, nn + 1)?)
    }

    pub fn to_json(&self) -> Value {
        let rep = self.witt.representative().to_json();
        let mut witt = json!({"entries": rep.entries});
        if let Some(s) = self.witt.signature() {
            witt["signature"] = json!(s);
        }
        json!({
            "base": self.base.name(),
            "degree": self.degree,
            "milnor": self.milnor.as_ref().map(MilnorRep::to_json),
            "witt": witt,
            "compatible": self.compatible,
        })
    }
}

fn eval_word(w: &Word, base: &BaseField) -> Result<GnValue, MwkError> {
    let mut acc = GnValue::integer(base, &BigInt::from(1))?;
    for _ in 0..w.eta {
        acc = acc.mul(&GnValue::eta(base)?)?;
    }
    for a in &w.units {
        acc = acc.mul(&GnValue::symbol(base, a)?)?;
    }
    Ok(acc)
}

/// Evaluates an expression in `G^n(base)`; the empty sum evaluates to zero in degree `empty_degree`.
pub fn mw_eval_in_degree(e: &MwExpr, base: &BaseField, empty_degree: i64) -> Result<GnValue, MwkError> {
    let degree = e.degree().unwrap_or(empty_degree);
    let mut acc = GnValue::zero(base, degree)?;
    for (w, c) in e.terms() {
        let term = GnValue::integer(base, c)?.mul(&eval_word(w, base)?)?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

pub fn mw_eval(e: &MwExpr, base: &BaseField) -> Result<GnValue, MwkError> {
    mw_eval_in_degree(e, base, 0)
}

pub fn mw_to_milnor(e: &MwExpr, base: &BaseField) -> Result<Option<MilnorRep>, MwkError> {
    Ok(mw_eval(e, base)?.milnor.clone())
}

pub fn mw_to_witt(e: &MwExpr, base: &BaseField) -> Result<WittClass, MwkError> {
    Ok(mw_eval(e, base)?.witt.clone())
}

/// Both sides of a defining relation, with literal (unnormalized) generator order.
#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub id: u8,
    pub lhs: Vec<Vec<Generator>>,
    pub rhs: Vec<Vec<Generator>>,
    pub degree: i64,
}

/// A single generator of the free algebra, or an integer scalar.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    Symbol(Rational),
    Eta,
    Int(i64),
}

impl Generator {
    fn eval(&self, base: &BaseField) -> Result<GnValue, MwkError> {
        match self {
            Generator::Symbol(a) => GnValue::symbol(base, a),
            Generator::Eta => GnValue::eta(base),
            Generator::Int(k) => GnValue::integer(base, &BigInt::from(*k)),
        }
    }

    fn degree(&self) -> i64 {
        match self {
            Generator::Symbol(_) => 1,
            Generator::Eta => -1,
            Generator::Int(_) => 0,
        }
    }
}

fn eval_product(word: &[Generator], base: &BaseField) -> Result<GnValue, MwkError> {
    let mut acc = GnValue::integer(base, &BigInt::from(1))?;
    for g in word {
        acc = acc.mul(&g.eval(base)?)?;
    }
    Ok(acc)
}

fn eval_sum(words: &[Vec<Generator>], base: &BaseField, degree: i64) -> Result<GnValue, MwkError> {
    let mut acc = GnValue::zero(base, degree)?;
    for w in words {
        acc = acc.add(&eval_product(w, base)?)?;
    }
    Ok(acc)
}

impl RelationInstance {
    /// Relation `id` (1–4) at the given slot values.
    pub fn new(id: u8, args: &[Rational]) -> Result<Self, MwkError> {
        use Generator::{Eta, Int, Symbol};
        let need = match id {
            1 => 2,
            2 | 4 => 1,
            3 => 0,
            _ => return Err(MwkError::InvalidAssignment(format!("no relation {id}"))),
        };
        if args.len() != need {
            return Err(MwkError::InvalidAssignment(format!("relation {id} takes {need} values")));
        }
        if args.iter().any(Zero::is_zero) {
            return Err(MwkError::InvalidAssignment("slot values must be nonzero".into()));
        }
        let one = Rational::from_integer(1.into());
        let inst = match id {
            1 => {
                let (a, b) = (args[0].clone(), args[1].clone());
                RelationInstance {
                    id,
                    lhs: vec![vec![Symbol(&a * &b)]],
                    rhs: vec![vec![Symbol(a.clone())], vec![Symbol(b.clone())], vec![Eta, Symbol(a), Symbol(b)]],
                    degree: 1,
                }
            }
            2 => {
                let a = args[0].clone();
                if a == one {
                    return Err(MwkError::InvalidAssignment("relation 2 needs a ≠ 1".into()));
                }
                RelationInstance {
                    id,
                    lhs: vec![vec![Symbol(a.clone()), Symbol(&one - &a)]],
                    rhs: vec![],
                    degree: 2,
                }
            }
            3 => RelationInstance {
                id,
                lhs: vec![vec![Eta, Eta, Symbol(-one.clone())], vec![Eta, Int(2)]],
                rhs: vec![],
                degree: -1,
            },
            _ => {
                let a = args[0].clone();
                RelationInstance {
                    id,
                    lhs: vec![vec![Eta, Symbol(a.clone())]],
                    rhs: vec![vec![Symbol(a), Eta]],
                    degree: 0,
                }
            }
        };
        Ok(inst)
    }

    /// Multiplies both sides by `left` on the left and `right` on the right.
    pub fn in_context(&self, left: &[Generator], right: &[Generator]) -> RelationInstance {
        let wrap = |words: &[Vec<Generator>]| -> Vec<Vec<Generator>> {
            words.iter().map(|w| left.iter().chain(w).chain(right).cloned().collect()).collect()
        };
        let extra: i64 = left.iter().chain(right).map(Generator::degree).sum();
        RelationInstance {
            id: self.id,
            lhs: wrap(&self.lhs),
            rhs: wrap(&self.rhs),
            degree: self.degree + extra,
        }
    }

    pub fn sides(&self, base: &BaseField) -> Result<(GnValue, GnValue), MwkError> {
        Ok((eval_sum(&self.lhs, base, self.degree)?, eval_sum(&self.rhs, base, self.degree)?))
    }

    pub fn holds(&self, base: &BaseField) -> Result<bool, MwkError> {
        let (l, r) = self.sides(base)?;
        Ok(l == r)
    }
}

/// Checks defining relation `id` under evaluation into `G^*(base)`.
pub fn mw_relation_check(id: u8, args: &[Rational], base: &BaseField) -> Result<bool, MwkError> {
    require_decidable(base)?;
    if let BaseField::Fp(_) = base {
        for a in args {
            if base.is_zero(&base.from_rational(a)?) {
                return Err(MwkError::InvalidAssignment(format!("{a} vanishes in {}", base.name())));
            }
        }
        if id == 2 && base.from_rational(&args[0])?.is_one() {
            return Err(MwkError::InvalidAssignment("relation 2 needs a ≠ 1".into()));
        }
    }
    RelationInstance::new(id, args)?.holds(base)
}

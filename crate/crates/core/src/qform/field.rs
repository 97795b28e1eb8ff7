use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::QformError;
use crate::ring::parse_poly;
use crate::ring::upoly::{rational_sqrt, RatFunc};
use crate::Rational;

/// Ground fields for forms. Elements of `Reals` and `Complex` are rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Reals,
    Complex,
    Rationals,
    Fp(u64),
    /// `ℚ(var)`
    Functions(String),
}

#[derive(Serialize, Deserialize)]
enum BaseTag {
    R,
    C,
    Q,
    Fp(u64),
    Qt(String),
}

impl Serialize for BaseField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let tag = match self {
            BaseField::Reals => BaseTag::R,
            BaseField::Complex => BaseTag::C,
            BaseField::Rationals => BaseTag::Q,
            BaseField::Fp(p) => BaseTag::Fp(*p),
            BaseField::Functions(v) => BaseTag::Qt(v.clone()),
        };
        tag.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BaseField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let base = match BaseTag::deserialize(d)? {
            BaseTag::R => BaseField::Reals,
            BaseTag::C => BaseField::Complex,
            BaseTag::Q => BaseField::Rationals,
            BaseTag::Fp(p) => BaseField::prime(p).map_err(serde::de::Error::custom)?,
            BaseTag::Qt(v) => BaseField::Functions(v),
        };
        Ok(base)
    }
}

/// A nonzero-or-zero element of one of the supported fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(Rational),
    Mod(u64),
    Fun(RatFunc),
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl BaseField {
    /// `𝔽_p` for an odd prime below 2³¹.
    pub fn prime(p: u64) -> Result<Self, QformError> {
        if p == 2 || !is_prime(p) || p >= 1 << 31 {
            return Err(QformError::InvalidPrime(p));
        }
        Ok(BaseField::Fp(p))
    }

    /// Parses `R`, `C`, `Q`, `F<p>` / `Fp<p>`, or `Q(t)`.
    pub fn parse(tag: &str) -> Result<Self, QformError> {
        let t = tag.trim();
        match t {
            "R" | "Reals" => return Ok(BaseField::Reals),
            "C" | "Complex" => return Ok(BaseField::Complex),
            "Q" | "Rationals" => return Ok(BaseField::Rationals),
            _ => {}
        }
        if let Some(inner) = t.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')) {
            return Ok(BaseField::Functions(inner.trim().to_string()));
        }
        let digits = t.strip_prefix("Fp").or_else(|| t.strip_prefix('F'));
        match digits.and_then(|d| d.parse::<u64>().ok()) {
            Some(p) => BaseField::prime(p),
            None => Err(QformError::InvalidElement(format!("unknown base field '{tag}'"))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            BaseField::Reals => "R".into(),
            BaseField::Complex => "C".into(),
            BaseField::Rationals => "Q".into(),
            BaseField::Fp(p) => format!("F{p}"),
            BaseField::Functions(v) => format!("Q({v})"),
        }
    }

    /// Whether Witt classes over this field are computed exactly.
    pub fn is_decidable(&self) -> bool {
        matches!(self, BaseField::Reals | BaseField::Complex | BaseField::Fp(_))
    }

    pub fn from_rational(&self, q: &Rational) -> Result<FieldElem, QformError> {
        match self {
            BaseField::Fp(p) => {
                let p_big = BigInt::from(*p);
                let den = q.denom().mod_floor(&p_big);
                if den.is_zero() {
                    return Err(QformError::InvalidElement(format!("{q} has no image in F{p}")));
                }
                let num = q.numer().mod_floor(&p_big).to_u64().expect("reduced");
                let den = den.to_u64().expect("reduced");
                Ok(FieldElem::Mod(num * pow_mod(den, p - 2, *p) % p))
            }
            BaseField::Functions(_) => Ok(FieldElem::Fun(RatFunc::constant(q.clone()))),
            _ => Ok(FieldElem::Rat(q.clone())),
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        self.from_rational(&Rational::from_integer(n.into())).expect("integers map into every supported field")
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn parse_elem(&self, text: &str) -> Result<FieldElem, QformError> {
        let bad = |e: crate::ring::RingError| QformError::InvalidElement(format!("'{text}': {e}"));
        match self {
            BaseField::Functions(v) => Ok(FieldElem::Fun(RatFunc::parse(text, v).map_err(bad)?)),
            _ => {
                let p = parse_poly(text, &[]).map_err(bad)?;
                let q = p.constant_value().unwrap_or_else(Rational::zero);
                self.from_rational(&q)
            }
        }
    }

    pub fn show(&self, e: &FieldElem) -> String {
        match (self, e) {
            (BaseField::Functions(v), FieldElem::Fun(f)) => f.show(v),
            (_, FieldElem::Rat(q)) => q.to_string(),
            (_, FieldElem::Mod(a)) => a.to_string(),
            (_, FieldElem::Fun(f)) => f.to_string(),
        }
    }

    pub fn check(&self, e: &FieldElem) -> Result<(), QformError> {
        let ok = match (self, e) {
            (BaseField::Fp(p), FieldElem::Mod(a)) => a < p,
            (BaseField::Functions(_), FieldElem::Fun(_)) => true,
            (BaseField::Reals | BaseField::Complex | BaseField::Rationals, FieldElem::Rat(_)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(QformError::BaseMismatch)
        }
    }

    pub fn is_zero(&self, e: &FieldElem) -> bool {
        match e {
            FieldElem::Rat(q) => q.is_zero(),
            FieldElem::Mod(a) => *a == 0,
            FieldElem::Fun(f) => f.is_zero(),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (a, b) {
            (FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x * y),
            (FieldElem::Mod(x), FieldElem::Mod(y)) => {
                let BaseField::Fp(p) = self else { unreachable!("residues belong to F_p") };
                FieldElem::Mod(x * y % p)
            }
            (FieldElem::Fun(x), FieldElem::Fun(y)) => FieldElem::Fun(x * y),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (a, b) {
            (FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x + y),
            (FieldElem::Mod(x), FieldElem::Mod(y)) => {
                let BaseField::Fp(p) = self else { unreachable!("residues belong to F_p") };
                FieldElem::Mod((x + y) % p)
            }
            (FieldElem::Fun(x), FieldElem::Fun(y)) => FieldElem::Fun(x + y),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        self.mul(&self.from_int(-1), a)
    }

    pub fn inv(&self, a: &FieldElem) -> FieldElem {
        assert!(!self.is_zero(a), "inverse of zero");
        match a {
            FieldElem::Rat(x) => FieldElem::Rat(x.recip()),
            FieldElem::Mod(x) => {
                let BaseField::Fp(p) = self else { unreachable!("residues belong to F_p") };
                FieldElem::Mod(pow_mod(*x, p - 2, *p))
            }
            FieldElem::Fun(f) => FieldElem::Fun(f.inv()),
        }
    }

    /// Whether a nonzero element is a square in this field.
    pub fn is_square(&self, a: &FieldElem) -> bool {
        match (self, a) {
            (BaseField::Complex, _) => true,
            (BaseField::Reals, FieldElem::Rat(q)) => q.is_positive(),
            (BaseField::Rationals, FieldElem::Rat(q)) => rational_sqrt(q).is_some(),
            (BaseField::Fp(p), FieldElem::Mod(x)) => pow_mod(*x, (p - 1) / 2, *p) == 1,
            (BaseField::Functions(_), FieldElem::Fun(f)) => f.is_square(),
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    /// Smallest nonsquare of `𝔽_p`.
    pub fn least_nonsquare(&self) -> Option<u64> {
        match self {
            BaseField::Fp(p) => (2..*p).find(|&a| pow_mod(a, (p - 1) / 2, *p) != 1),
            _ => None,
        }
    }

    /// Smallest generator of `𝔽_p^×`.
    pub fn primitive_root(&self) -> Option<u64> {
        let BaseField::Fp(p) = self else { return None };
        let order = p - 1;
        let mut primes = Vec::new();
        let mut m = order;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                primes.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        (2..*p).find(|&g| primes.iter().all(|q| pow_mod(g, order / q, *p) != 1)).or(Some(1))
    }

    /// Exponent of `a` with respect to [`BaseField::primitive_root`].
    pub fn discrete_log(&self, a: &FieldElem) -> Option<u64> {
        let (BaseField::Fp(p), FieldElem::Mod(x)) = (self, a) else { return None };
        if *x == 0 {
            return None;
        }
        let g = self.primitive_root()?;
        let mut cur = 1 % p;
        (0..p - 1).find(|_| {
            let hit = cur == *x;
            cur = cur * g % p;
            hit
        })
    }

    /// Sign of an element of `Reals`, `Rationals` or `Complex`.
    pub fn sign(&self, a: &FieldElem) -> Option<i8> {
        match a {
            FieldElem::Rat(q) if !q.is_zero() => Some(if q.is_positive() { 1 } else { -1 }),
            _ => None,
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FieldElem {
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElem::Rat(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        match self {
            FieldElem::Fun(f) => Some(f),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(q) => q.is_one(),
            FieldElem::Mod(a) => *a == 1,
            FieldElem::Fun(f) => f.constant_value().is_some_and(|c| c.is_one()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        assert!(BaseField::prime(4).is_err());
        assert!(BaseField::prime(2).is_err());
        let f5 = BaseField::prime(5).unwrap();
        assert_eq!(f5.parse_elem("-1").unwrap(), FieldElem::Mod(4));
        assert_eq!(f5.parse_elem("1/2").unwrap(), FieldElem::Mod(3));
        assert!(f5.parse_elem("1/5").is_err());
        assert!(f5.is_square(&FieldElem::Mod(4)));
        assert!(!f5.is_square(&FieldElem::Mod(2)));
        assert_eq!(f5.primitive_root(), Some(2));
        assert_eq!(f5.discrete_log(&FieldElem::Mod(2)), Some(1));
        assert_eq!(f5.discrete_log(&FieldElem::Mod(3)), Some(3));
        assert_eq!(BaseField::Fp(7).primitive_root(), Some(3));
    }

    #[test]
    fn tags_roundtrip() {
        for tag in ["R", "C", "Q", "F7", "Q(t)"] {
            let b = BaseField::parse(tag).unwrap();
            assert_eq!(b.name(), tag);
            let json = serde_json::to_string(&b).unwrap();
            assert_eq!(serde_json::from_str::<BaseField>(&json).unwrap(), b);
        }
        assert_eq!(serde_json::to_string(&BaseField::Fp(5)).unwrap(), r#"{"Fp":5}"#);
        assert!(serde_json::from_str::<BaseField>(r#"{"Fp":9}"#).is_err());
    }

    #[test]
    fn square_classes() {
        assert!(BaseField::Reals.is_square(&FieldElem::Rat(Rational::new(2.into(), 3.into()))));
        assert!(!BaseField::Rationals.is_square(&FieldElem::Rat(Rational::from_integer(2.into()))));
        assert!(BaseField::Rationals.is_square(&FieldElem::Rat(Rational::new(4.into(), 9.into()))));
        let qt = BaseField::Functions("t".into());
        assert!(qt.is_square(&qt.parse_elem("t^2+2*t+1").unwrap()));
    }
}

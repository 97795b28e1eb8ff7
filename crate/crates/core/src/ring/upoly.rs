//! Univariate polynomials and rational functions over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::parse::parse_poly;
use super::poly::Poly;
use super::RingError;
use crate::Rational;

/// Dense univariate polynomial, coefficients from degree 0 upward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `t`
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(UPoly::one(), |acc, _| &acc * self)
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().expect("nonzero");
        let lc_inv = d.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut q = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty") * &lc_inv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            q[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (UPoly::new(q), UPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·other = g = gcd`.
    pub fn ext_gcd(&self, other: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Square root when `self` is a square of a rational polynomial.
    pub fn sqrt(&self) -> Option<UPoly> {
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        let deg = self.degree()?;
        if deg % 2 == 1 {
            return None;
        }
        let lead = rational_sqrt(&self.lc())?;
        let m = deg / 2;
        // determine root coefficients from the top down
        let mut root = vec![Rational::zero(); m + 1];
        root[m] = lead.clone();
        let two_lead = &lead + &lead;
        for k in (0..m).rev() {
            // coefficient of t^{m+k} in root^2 must match
            let mut acc = Rational::zero();
            for i in k + 1..=m {
                let j = m + k - i;
                if j > k && j <= m {
                    acc += &root[i] * &root[j];
                }
            }
            root[k] = (&self.coeffs[m + k] - acc) / &two_lead;
        }
        let r = UPoly::new(root);
        (&r * &r == *self).then_some(r)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(
            1,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (super::Monomial(vec![i as u32]), c.clone())),
        )
    }

    pub fn from_poly(p: &Poly) -> Self {
        assert_eq!(p.nvars(), 1, "univariate conversion");
        let deg = p.total_degree() as usize;
        let mut cs = vec![Rational::zero(); deg + 1];
        for (m, c) in p.terms() {
            cs[m.0[0] as usize] = c.clone();
        }
        UPoly::new(cs)
    }

    pub fn parse(text: &str, var: &str) -> Result<Self, RingError> {
        Ok(Self::from_poly(&parse_poly(text, &[var.to_string()])?))
    }

    pub fn show(&self, var: &str) -> String {
        self.to_poly().to_string_with(&[var.to_string()])
    }
}

/// Square root in ℚ, if it exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt(q.numer())?;
    let d = int_sqrt(q.denom())?;
    Some(Rational::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = Rational::zero();
        UPoly::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &-rhs
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

/// A place of ℚ(t): a monic irreducible polynomial, or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(UPoly),
    Infinity,
}

impl Place {
    /// Normalizes `p` to a monic place; constants are rejected.
    pub fn finite(p: &UPoly) -> Option<Place> {
        (!p.is_constant()).then(|| Place::Finite(p.monic()))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    pub fn show(&self, var: &str) -> String {
        match self {
            Place::Finite(p) => p.show(var),
            Place::Infinity => "infinity".to_string(),
        }
    }
}

/// Element of ℚ(t) in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: UPoly::one() };
        }
        let g = num.gcd(&den);
        let num = num.divrem(&g).0;
        let den = den.divrem(&g).0;
        let lc = den.lc().recip();
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFunc { num: p, den: UPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.is_constant().then(|| {
            self.num.coeffs().first().cloned().unwrap_or_else(Rational::zero) / self.den.lc()
        })
    }

    pub fn inv(&self) -> RatFunc {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn valuation(&self, place: &Place) -> i64 {
        assert!(!self.is_zero(), "valuation of zero");
        match place {
            Place::Infinity => self.den.degree().unwrap_or(0) as i64 - self.num.degree().unwrap_or(0) as i64,
            Place::Finite(p) => multiplicity(&self.num, p) as i64 - multiplicity(&self.den, p) as i64,
        }
    }

    /// Splits `self = π^v · u` with `u` a unit at `place`; returns `(v, u)`.
    ///
    /// At infinity the uniformizer is `1/t`.
    pub fn split_at(&self, place: &Place) -> (i64, RatFunc) {
        let v = self.valuation(place);
        let pi = match place {
            Place::Finite(p) => RatFunc::from_poly(p.clone()),
            Place::Infinity => RatFunc::new(UPoly::one(), UPoly::x()),
        };
        let pow = if v >= 0 { pi.powi(v as u32) } else { pi.inv().powi((-v) as u32) };
        (v, self / &pow)
    }

    pub fn powi(&self, k: u32) -> RatFunc {
        RatFunc::new(self.num.pow(k), self.den.pow(k))
    }

    /// Residue class of a unit at a degree-one place (or at infinity).
    pub fn residue_value(&self, place: &Place) -> Option<Rational> {
        match place {
            Place::Infinity => {
                let (dn, dd) = (self.num.degree()?, self.den.degree()?);
                (dn == dd).then(|| self.num.lc() / self.den.lc())
            }
            Place::Finite(p) if p.degree() == Some(1) => {
                // p = t - c
                let c = -&p.coeffs()[0];
                self.eval(&c).filter(|v| !v.is_zero())
            }
            Place::Finite(_) => None,
        }
    }

    /// Whether this is a square in ℚ(t).
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let lc = self.num.lc();
        rational_sqrt(&lc).is_some() && self.num.monic().sqrt().is_some() && self.den.sqrt().is_some()
    }

    /// Parses `P` or `(P)/(Q)` in the variable `var`.
    pub fn parse(text: &str, var: &str) -> Result<Self, RingError> {
        let t = text.trim();
        if let Some(split) = top_level_slash(t) {
            let (a, b) = (&t[..split], &t[split + 1..]);
            let num = UPoly::parse(a, var)?;
            let den = UPoly::parse(b, var)?;
            if den.is_zero() {
                return Err(RingError::Syntax { offset: split + 1, message: "zero denominator".into() });
            }
            return Ok(RatFunc::new(num, den));
        }
        Ok(RatFunc::from_poly(UPoly::parse(t, var)?))
    }

    pub fn show(&self, var: &str) -> String {
        if self.den.is_constant() {
            return self.num.scale(&self.den.lc().recip()).show(var);
        }
        format!("({})/({})", self.num.show(var), self.den.show(var))
    }
}

/// Position of a `/` joining two parenthesized groups, e.g. `(t+1)/(t-1)`.
fn top_level_slash(t: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 && t[..i].trim_end().ends_with(')') => return Some(i),
            _ => {}
        }
    }
    None
}

fn multiplicity(p: &UPoly, place: &UPoly) -> u32 {
    let mut k = 0;
    let mut cur = p.clone();
    loop {
        let (q, r) = cur.divrem(place);
        if !r.is_zero() {
            return k;
        }
        cur = q;
        k += 1;
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.show("t"))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &-rhs
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl std::ops::Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_int(1)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

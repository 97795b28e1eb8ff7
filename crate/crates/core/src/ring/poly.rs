use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use crate::Rational;

pub type Term = (Monomial, Rational);

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are stored strictly descending in degrevlex with no zero
/// coefficients, which makes structural equality coincide with equality
/// of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: Vec<Term>,
}

pub(crate) fn sort_terms(terms: &mut Vec<Term>, order: MonomialOrder) {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
}

/// Merge two term lists sorted descending in `order`, computing `a + c*m*b`.
pub(crate) fn axpy_terms(
    a: &[Term],
    c: &Rational,
    m: &Monomial,
    b: &[Term],
    order: MonomialOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |t: &Term| (m.mul(&t.0), c * &t.1);
    while i < a.len() && j < b.len() {
        let (bm, bc) = shifted(&b[j]);
        match order.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, bc));
                j += 1;
            }
            Ordering::Equal => {
                let s = &a[i].1 + bc;
                if !s.is_zero() {
                    out.push((bm, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        out.push(shifted(&b[j]));
        j += 1;
    }
    out
}

pub(crate) fn mul_terms(a: &[Term], b: &[Term], order: MonomialOrder) -> Vec<Term> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(a.len() * b.len());
    for (ma, ca) in a {
        for (mb, cb) in b {
            let e = acc.entry(ma.mul(mb)).or_insert_with(Rational::zero);
            *e += ca * cb;
        }
    }
    let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    sort_terms(&mut terms, order);
    terms
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Poly { nvars, terms: vec![(Monomial::var(nvars, i), Rational::one())] }
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_terms(&mut terms, MonomialOrder::DegRevLex);
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in descending degrevlex order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Terms sorted descending in `order`.
    pub fn terms_in(&self, order: MonomialOrder) -> Vec<Term> {
        let mut t = self.terms.clone();
        if order != MonomialOrder::DegRevLex {
            sort_terms(&mut t, order);
        }
        t
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<&Term> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point arity");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        total
    }

    /// Substitutes `images[i]` for variable `i`. All images must share one arity.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "composition arity");
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars), p.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Embeds into a ring with `extra` fresh variables appended.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        let nvars = self.nvars + extra;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(nvars, 0);
                (Monomial(e), c.clone())
            })
            .collect();
        // appending zero exponents preserves degrevlex order
        Poly { nvars, terms }
    }

    /// Sets variable `var` to the constant `value`, keeping the arity.
    pub fn specialize(&self, var: usize, value: &Rational) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            let k = std::mem::replace(&mut e[var], 0);
            (Monomial(e), c * num_traits::pow(value.clone(), k as usize))
        });
        Poly::from_terms(self.nvars, terms)
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[var];
            e[var] -= 1;
            (Monomial(e), c * Rational::from_integer(k.into()))
        });
        Poly::from_terms(self.nvars, terms)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        self.display(names).to_string()
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl std::fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.names[i], e)),
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        f.write_str(&out)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch in addition");
        let terms = axpy_terms(
            &self.terms,
            &Rational::one(),
            &Monomial::one(self.nvars),
            &rhs.terms,
            MonomialOrder::DegRevLex,
        );
        Poly { nvars: self.nvars, terms }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch in subtraction");
        let terms = axpy_terms(
            &self.terms,
            &-Rational::one(),
            &Monomial::one(self.nvars),
            &rhs.terms,
            MonomialOrder::DegRevLex,
        );
        Poly { nvars: self.nvars, terms }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch in multiplication");
        Poly { nvars: self.nvars, terms: mul_terms(&self.terms, &rhs.terms, MonomialOrder::DegRevLex) }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Determinant of a square polynomial matrix by expansion over column subsets.
///
/// Every product is passed through `normalize`, which lets callers reduce
/// modulo an ideal as they go.
pub fn det_with(matrix: &[Vec<Poly>], nvars: usize, normalize: &dyn Fn(Poly) -> Poly) -> Poly {
    let n = matrix.len();
    if n == 0 {
        return Poly::one(nvars);
    }
    assert!(matrix.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    assert!(n < 24, "matrix too large for subset expansion");
    // minors[s]: determinant of rows 0..|s| against the columns in s
    let mut minors: Vec<Option<Poly>> = vec![None; 1 << n];
    minors[0] = Some(Poly::one(nvars));
    for mask in 0u32..(1 << n) {
        let Some(current) = minors[mask as usize].take() else { continue };
        if current.is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            minors[mask as usize] = Some(current);
            continue;
        }
        let mut passed = 0;
        for col in (0..n).rev() {
            if mask & (1 << col) != 0 {
                passed += 1;
                continue;
            }
            let entry = &matrix[row][col];
            if entry.is_zero() {
                continue;
            }
            // sign of inserting `col` among the already chosen columns
            let term = normalize(&current * entry);
            let term = if passed % 2 == 1 { -term } else { term };
            let slot = &mut minors[(mask | (1 << col)) as usize];
            *slot = Some(match slot.take() {
                Some(p) => normalize(p + term),
                None => term,
            });
        }
        minors[mask as usize] = Some(current);
    }
    minors[(1 << n) - 1].take().unwrap_or_else(|| Poly::zero(nvars))
}

pub fn det(matrix: &[Vec<Poly>], nvars: usize) -> Poly {
    det_with(matrix, nvars, &|p| p)
}

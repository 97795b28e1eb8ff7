use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::MwkError;
use crate::ring::parse_poly;
use crate::Rational;

/// `η^eta · [a₁]⋯[a_n]`; η is moved to the front, which is harmless since it is central.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub eta: u32,
    pub units: Vec<Rational>,
}

impl Word {
    pub fn one() -> Self {
        Word { eta: 0, units: Vec::new() }
    }

    pub fn symbol(a: Rational) -> Self {
        Word { eta: 0, units: vec![a] }
    }

    pub fn eta() -> Self {
        Word { eta: 1, units: Vec::new() }
    }

    pub fn degree(&self) -> i64 {
        self.units.len() as i64 - i64::from(self.eta)
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut units = self.units.clone();
        units.extend(other.units.iter().cloned());
        Word { eta: self.eta + other.eta, units }
    }
}

/// An integer combination of words of one common degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MwExpr {
    terms: BTreeMap<Word, BigInt>,
}

impl MwExpr {
    pub fn zero() -> Self {
        MwExpr::default()
    }

    pub fn integer(n: i64) -> Self {
        Self::from_word(Word::one(), BigInt::from(n))
    }

    pub fn symbol(a: Rational) -> Self {
        Self::from_word(Word::symbol(a), BigInt::one())
    }

    pub fn symbol_int(a: i64) -> Self {
        Self::symbol(Rational::from_integer(a.into()))
    }

    pub fn eta() -> Self {
        Self::from_word(Word::eta(), BigInt::one())
    }

    pub fn from_word(w: Word, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        MwExpr { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of the words; `None` for the empty sum.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next().map(Word::degree)
    }

    pub fn add(&self, other: &MwExpr) -> Result<MwExpr, MwkError> {
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a != b {
                return Err(MwkError::MixedDegrees(a, b));
            }
        }
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let e = terms.entry(w.clone()).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(w);
            }
        }
        Ok(MwExpr { terms })
    }

    pub fn scale(&self, k: &BigInt) -> MwExpr {
        if k.is_zero() {
            return MwExpr::zero();
        }
        MwExpr { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect() }
    }

    pub fn neg(&self) -> MwExpr {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &MwExpr) -> Result<MwExpr, MwkError> {
        self.add(&other.neg())
    }

    pub fn parse(text: &str) -> Result<MwExpr, MwkError> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut p = Parser { text, chars, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected input"));
        }
        Ok(e)
    }
}

/// Bilinear product; degrees add.
pub fn mw_product(a: &MwExpr, b: &MwExpr) -> MwExpr {
    let mut out = MwExpr::zero();
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            let t = MwExpr::from_word(wa.mul(wb), ca * cb);
            out = out.add(&t).expect("words of a product share a degree");
        }
    }
    out
}

impl fmt::Display for MwExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            if !c.abs().is_one() || (w.eta == 0 && w.units.is_empty()) {
                factors.push(c.abs().to_string());
            }
            factors.extend((0..w.eta).map(|_| "eta".to_string()));
            factors.extend(w.units.iter().map(|a| format!("[{a}]")));
            let sign = if c.is_negative() { "-" } else if k > 0 { "+" } else { "" };
            let sep = if k > 0 { " " } else { "" };
            let body = factors.join("*");
            if k > 0 {
                write!(f, "{sep}{sign} {body}")?;
            } else {
                write!(f, "{sign}{body}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> MwkError {
        MwkError::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<MwExpr, MwkError> {
        self.skip_ws();
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Some('-' | '−') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MwExpr, MwkError> {
        self.skip_ws();
        let negate = matches!(self.peek(), Some('-' | '−'));
        if negate {
            self.pos += 1;
        }
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                let f = self.factor()?;
                acc = mw_product(&acc, &f);
            } else {
                break;
            }
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    fn factor(&mut self) -> Result<MwExpr, MwkError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('[') => {
                let start = self.pos;
                let close = self.chars[start..]
                    .iter()
                    .position(|&(_, c)| c == ']')
                    .map(|k| start + k)
                    .ok_or_else(|| self.error("unclosed '['"))?;
                let lo = self.chars[start].0 + 1;
                let hi = self.chars[close].0;
                let inner = &self.text[lo..hi];
                let value = parse_poly(inner, &[])
                    .map_err(|e| MwkError::Syntax { offset: start + 1, message: format!("symbol entry: {e}") })?
                    .constant_value()
                    .unwrap_or_else(Rational::zero);
                self.pos = close + 1;
                Ok(MwExpr::symbol(value))
            }
            Some('η') => {
                self.pos += 1;
                Ok(MwExpr::eta())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                Ok(MwExpr::from_word(Word::one(), s.parse().expect("digits")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                if s == "eta" {
                    Ok(MwExpr::eta())
                } else {
                    self.pos = start;
                    Err(self.error(&format!("unknown identifier '{s}'")))
                }
            }
            _ => Err(self.error("expected a symbol, eta, an integer or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_normalizes_to_the_front() {
        let a = MwExpr::parse("[3]*eta").unwrap();
        let b = MwExpr::parse("eta*[3]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), Some(0));
        let sum = MwExpr::parse("([2]+[5])*eta").unwrap();
        assert_eq!(sum, MwExpr::parse("eta*[2] + eta*[5]").unwrap());
    }

    #[test]
    fn product_with_zero() {
        assert!(mw_product(&MwExpr::parse("[2]*[3]").unwrap(), &MwExpr::zero()).is_zero());
    }

    #[test]
    fn grammar() {
        // η lowers the degree, so this mixes degrees 2 and 1
        assert!(matches!(MwExpr::parse("[2]*[3] + 2*eta*[−1]*[5]"), Err(MwkError::MixedDegrees(2, 1))));
        let e = MwExpr::parse("[2]*[3] + 2*eta*[−1]*[5]*[7]").unwrap();
        assert_eq!(e.degree(), Some(2));
        assert_eq!(e.terms().count(), 2);
        assert!(matches!(MwExpr::parse("[2] + eta"), Err(MwkError::MixedDegrees(1, -1))));
        assert!(matches!(MwExpr::parse("[2"), Err(MwkError::Syntax { .. })));
        assert!(matches!(MwExpr::parse("zeta"), Err(MwkError::Syntax { offset: 0, .. })));
        assert_eq!(MwExpr::parse("eta*(eta*[-1]+2)").unwrap().degree(), Some(-1));
        assert_eq!(MwExpr::parse("[1/2]").unwrap(), MwExpr::symbol(Rational::new(1.into(), 2.into())));
    }

    #[test]
    fn display_roundtrip() {
        for s in ["[2]*[3] + 2*eta*[-1]*[5]*[7]", "-3*eta", "2", "eta*eta*[7]", "[1/2] - [3]"] {
            let e = MwExpr::parse(s).unwrap();
            assert_eq!(MwExpr::parse(&e.to_string()).unwrap(), e, "{s} -> {e}");
        }
    }
}

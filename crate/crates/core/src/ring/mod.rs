//! Exact polynomial arithmetic, Gröbner bases and zero-dimensional quotients.

mod cache;
mod groebner;
mod monomial;
mod parse;
mod poly;
mod quotient;
pub mod upoly;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub use cache::{GbCache, CACHE_ENV};
pub use groebner::{
    check_combination, groebner, groebner_with, membership_certificate, membership_certificate_with, GbConfig,
    GroebnerBasis, DEFAULT_PAIR_LIMIT,
};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, split_list};
pub use poly::{det, det_with, Poly, Term};
pub use quotient::{quotient_basis, trace_form, FiniteAlgebra};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum RingError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable '{name}' at offset {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("no generators given")]
    EmptyGenerators,
    #[error("Buchberger aborted after {pairs} S-pairs")]
    ResourceLimit { pairs: usize },
    #[error("ideal is not zero-dimensional: variable {variable} has no pure power among leading terms")]
    NotZeroDimensional { variable: usize },
    #[error("invalid ring specification: {0}")]
    InvalidSpec(String),
}

/// A finitely presented algebra `ℚ[x₁..x_N]/(g₁..g_m)`.
#[derive(Clone, Debug)]
pub struct RingSpec {
    vars: Vec<String>,
    relations: Vec<Poly>,
    dim: usize,
    complete_intersection: bool,
    /// User-asserted: the real variety is rational.
    pub rational: bool,
    /// User-asserted: the canonical module is free.
    pub trivial_canonical: bool,
    relation_gb: OnceLock<Option<GroebnerBasis>>,
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
            && self.relations == other.relations
            && self.dim == other.dim
            && self.complete_intersection == other.complete_intersection
            && self.rational == other.rational
            && self.trivial_canonical == other.trivial_canonical
    }
}

impl Eq for RingSpec {}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingSpecJson {
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub dim: usize,
    #[serde(default)]
    pub complete_intersection: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rational: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trivial_canonical: Option<bool>,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingSpec {
    pub fn new(
        vars: Vec<String>,
        relations: Vec<Poly>,
        dim: usize,
        complete_intersection: bool,
    ) -> Result<Self, RingError> {
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(RingError::InvalidSpec(format!("bad variable name '{v}'")));
            }
            if vars[..i].contains(v) {
                return Err(RingError::InvalidSpec(format!("duplicate variable '{v}'")));
            }
        }
        if relations.iter().any(|r| r.nvars() != vars.len()) {
            return Err(RingError::RingMismatch);
        }
        if relations.iter().any(|r| r.is_zero()) {
            return Err(RingError::InvalidSpec("zero relation".into()));
        }
        if dim > vars.len() {
            return Err(RingError::InvalidSpec("dimension exceeds number of variables".into()));
        }
        if complete_intersection && relations.len() + dim != vars.len() {
            return Err(RingError::InvalidSpec(format!(
                "complete intersection needs {} relations, got {}",
                vars.len() - dim,
                relations.len()
            )));
        }
        Ok(RingSpec {
            vars,
            relations,
            dim,
            complete_intersection,
            rational: false,
            trivial_canonical: false,
            relation_gb: OnceLock::new(),
        })
    }

    /// The algebraic sphere `x₁² + … + x_{d+1}² = 1`, with variables `x, y, z` when `d = 2`.
    pub fn sphere(d: usize) -> Self {
        assert!(d >= 1, "sphere dimension");
        let vars: Vec<String> = if d == 2 {
            vec!["x".into(), "y".into(), "z".into()]
        } else {
            (1..=d + 1).map(|i| format!("x{i}")).collect()
        };
        let n = d + 1;
        let mut rel = Poly::from_int(n, -1);
        for i in 0..n {
            rel = &rel + &Poly::var(n, i).pow(2);
        }
        let mut spec = RingSpec::new(vars, vec![rel], d, true).expect("sphere presentation");
        spec.rational = true;
        spec.trivial_canonical = true;
        spec
    }

    /// Built-in rings by name: `sphereN` for N ≥ 1.
    pub fn builtin(name: &str) -> Option<Self> {
        let d: usize = name.strip_prefix("sphere")?.parse().ok()?;
        (1..=16).contains(&d).then(|| Self::sphere(d))
    }

    pub fn from_json(json: &RingSpecJson) -> Result<Self, RingError> {
        let rels = json.relations.iter().map(|r| parse_poly(r, &json.vars)).collect::<Result<Vec<_>, _>>()?;
        let mut spec = RingSpec::new(json.vars.clone(), rels, json.dim, json.complete_intersection)?;
        spec.rational = json.rational.unwrap_or(false);
        spec.trivial_canonical = json.trivial_canonical.unwrap_or(false);
        Ok(spec)
    }

    pub fn to_json(&self) -> RingSpecJson {
        RingSpecJson {
            vars: self.vars.clone(),
            relations: self.relations.iter().map(|r| r.to_string_with(&self.vars)).collect(),
            dim: self.dim,
            complete_intersection: self.complete_intersection,
            rational: Some(self.rational),
            trivial_canonical: Some(self.trivial_canonical),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_complete_intersection(&self) -> bool {
        self.complete_intersection
    }

    pub fn parse(&self, text: &str) -> Result<Poly, RingError> {
        parse_poly(text, &self.vars)
    }

    pub fn parse_list(&self, text: &str) -> Result<Vec<Poly>, RingError> {
        split_list(text).iter().map(|s| self.parse(s)).collect()
    }

    pub fn show(&self, p: &Poly) -> String {
        p.to_string_with(&self.vars)
    }

    /// Same presentation with one fresh variable appended.
    pub fn extend(&self, name: &str) -> Result<Self, RingError> {
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        let rels = self.relations.iter().map(|r| r.extend_vars(1)).collect();
        let mut spec = RingSpec::new(vars, rels, self.dim + 1, self.complete_intersection)?;
        spec.rational = self.rational;
        spec.trivial_canonical = self.trivial_canonical;
        Ok(spec)
    }

    /// Gröbner basis of the relation ideal (`None` for a polynomial ring).
    pub fn relation_basis(&self) -> Result<Option<GroebnerBasis>, RingError> {
        if let Some(gb) = self.relation_gb.get() {
            return Ok(gb.clone());
        }
        let gb = if self.relations.is_empty() {
            None
        } else {
            Some(groebner(&self.relations, MonomialOrder::DegRevLex, false)?)
        };
        Ok(self.relation_gb.get_or_init(|| gb).clone())
    }

    /// Normal form modulo the relations.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly, RingError> {
        match self.relation_basis()? {
            Some(gb) => gb.reduce(p),
            None => Ok(p.clone()),
        }
    }

    pub fn equal_mod_relations(&self, a: &Poly, b: &Poly) -> Result<bool, RingError> {
        Ok(self.normal_form(&(a - b))?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let text = r#"{"vars":["x","y","z"],"relations":["x^2+y^2+z^2-1"],"dim":2,"complete_intersection":true}"#;
        let json: RingSpecJson = serde_json::from_str(text).unwrap();
        let spec = RingSpec::from_json(&json).unwrap();
        assert_eq!(spec.relations(), RingSpec::sphere(2).relations());
        assert!(!spec.rational);
    }

    #[test]
    fn invariants_enforced() {
        let v = |s: &[&str]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert!(RingSpec::new(v(&["x", "x"]), vec![], 0, false).is_err());
        assert!(RingSpec::new(v(&[""]), vec![], 0, false).is_err());
        assert!(RingSpec::new(v(&["x", "y"]), vec![Poly::var(2, 0)], 0, true).is_err());
        assert!(RingSpec::new(v(&["x", "y"]), vec![Poly::zero(2)], 1, false).is_err());
    }

    #[test]
    fn builtins() {
        let s = RingSpec::builtin("sphere4").unwrap();
        assert_eq!(s.nvars(), 5);
        assert_eq!(s.dim(), 4);
        assert!(RingSpec::builtin("torus").is_none());
        assert_eq!(RingSpec::sphere(2).vars(), &["x", "y", "z"]);
    }
}

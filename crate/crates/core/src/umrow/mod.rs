//! Unimodular rows: certificates, the elementary action, homotopy witnesses,
//! completion checks and preparation of a regular tail.

mod completion;
mod homotopy;
mod prep;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ring::{check_combination, groebner_with, GbConfig, Monomial, MonomialOrder, Poly, RingError, RingSpec};
use crate::Rational;

pub use completion::{cayley_dickson_completion, quaternion_completion, verify_completion, CompletionMatrix, CompletionReport};
pub use homotopy::{check_homotopy, HomotopyReport, HomotopyWitness};
pub use prep::{
    prep_regular, prep_regular_with, row_from_point, tail_algebra, wms_relation_instance, Pole, Prepared, WmsInstance,
    WmsOutcome, PREP_RETRIES,
};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum UmrowError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("a row needs at least two entries")]
    TooShort,
    #[error("index {index} out of range for a row of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("elementary operation needs distinct indices, got {0} twice")]
    SameIndex(usize),
    #[error("{0}")]
    Precondition(String),
    #[error("no zero-dimensional tail found after {attempts} attempts")]
    RetryBudget { attempts: usize },
    #[error("the value at the pole must be nonzero")]
    ZeroAlpha,
}

/// Cofactors with `Σ cᵢ aᵢ + Σ dⱼ gⱼ = 1` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub entry_cofactors: Vec<Poly>,
    pub relation_cofactors: Vec<Poly>,
}

impl Certificate {
    pub fn verify(&self, ring: &RingSpec, entries: &[Poly]) -> bool {
        let mut gens = entries.to_vec();
        gens.extend(ring.relations().iter().cloned());
        let mut cof = self.entry_cofactors.clone();
        cof.extend(self.relation_cofactors.iter().cloned());
        check_combination(&cof, &gens, &Poly::one(ring.nvars()))
    }

    pub fn to_json(&self, ring: &RingSpec) -> serde_json::Value {
        let show = |v: &[Poly]| v.iter().map(|p| ring.show(p)).collect::<Vec<_>>();
        serde_json::json!({
            "entry_cofactors": show(&self.entry_cofactors),
            "relation_cofactors": show(&self.relation_cofactors),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    ring: RingSpec,
    entries: Vec<Poly>,
    certificate: Option<Certificate>,
}

impl Row {
    pub fn new(ring: &RingSpec, entries: Vec<Poly>) -> Result<Self, UmrowError> {
        if entries.len() < 2 {
            return Err(UmrowError::TooShort);
        }
        if entries.iter().any(|p| p.nvars() != ring.nvars()) {
            return Err(RingError::RingMismatch.into());
        }
        Ok(Row { ring: ring.clone(), entries, certificate: None })
    }

    /// Comma-separated entries, e.g. `"z,x,y"`.
    pub fn parse(ring: &RingSpec, text: &str) -> Result<Self, UmrowError> {
        Row::new(ring, ring.parse_list(text)?)
    }

    pub fn from_strings(ring: &RingSpec, entries: &[String]) -> Result<Self, UmrowError> {
        let polys = entries.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>, _>>()?;
        Row::new(ring, polys)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        self.certificate.as_ref()
    }

    /// Attaches `cert` after checking it.
    pub fn with_certificate(mut self, cert: Certificate) -> Result<Self, UmrowError> {
        if !cert.verify(&self.ring, &self.entries) {
            return Err(UmrowError::Precondition("certificate does not expand to 1".into()));
        }
        self.certificate = Some(cert);
        Ok(self)
    }

    /// Computes a certificate if none is attached; errors when the row is not unimodular.
    pub fn certified(self) -> Result<Self, UmrowError> {
        if self.certificate.is_some() {
            return Ok(self);
        }
        match is_unimodular(&self)? {
            Unimodularity::Certified(c) => Ok(Row { certificate: Some(c), ..self }),
            Unimodularity::Refuted { .. } => Err(UmrowError::Precondition("row is not unimodular".into())),
        }
    }

    pub fn show(&self) -> Vec<String> {
        self.entries.iter().map(|p| self.ring.show(p)).collect()
    }

    /// Entrywise equality modulo the relations.
    pub fn equivalent_entries(&self, other: &Row) -> Result<bool, UmrowError> {
        if self.len() != other.len() {
            return Ok(false);
        }
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !self.ring.equal_mod_relations(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unimodularity {
    Certified(Certificate),
    /// The reduced Gröbner basis of entries and relations, which does not contain 1.
    Refuted { basis: Vec<Poly> },
}

impl Unimodularity {
    pub fn is_unimodular(&self) -> bool {
        matches!(self, Unimodularity::Certified(_))
    }
}

pub fn is_unimodular(row: &Row) -> Result<Unimodularity, UmrowError> {
    is_unimodular_with(row, &GbConfig::default())
}

pub fn is_unimodular_with(row: &Row, config: &GbConfig) -> Result<Unimodularity, UmrowError> {
    let ring = row.ring();
    let n = row.len();
    let mut gens = row.entries().to_vec();
    gens.extend(ring.relations().iter().cloned());
    let gb = groebner_with(&gens, MonomialOrder::DegRevLex, true, config)?;
    if !gb.is_unit_ideal() {
        return Ok(Unimodularity::Refuted { basis: gb.basis().to_vec() });
    }
    let cof = gb.cofactors().expect("requested cofactors")[0].clone();
    let cert = Certificate { entry_cofactors: cof[..n].to_vec(), relation_cofactors: cof[n..].to_vec() };
    debug_assert!(cert.verify(ring, row.entries()));
    Ok(Unimodularity::Certified(cert))
}

/// `a_i ← a_i + h·a_j`, with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryOp {
    pub i: usize,
    pub j: usize,
    pub h: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementaryOpJson {
    pub i: usize,
    pub j: usize,
    pub h: String,
}

impl ElementaryOp {
    pub fn new(i: usize, j: usize, h: Poly) -> Result<Self, UmrowError> {
        if i == j {
            return Err(UmrowError::SameIndex(i));
        }
        Ok(ElementaryOp { i, j, h })
    }

    pub fn inverse(&self) -> ElementaryOp {
        ElementaryOp { i: self.i, j: self.j, h: -&self.h }
    }

    pub fn from_json(ring: &RingSpec, json: &ElementaryOpJson) -> Result<Self, UmrowError> {
        ElementaryOp::new(json.i, json.j, ring.parse(&json.h)?)
    }

    pub fn to_json(&self, ring: &RingSpec) -> ElementaryOpJson {
        ElementaryOpJson { i: self.i, j: self.j, h: ring.show(&self.h) }
    }
}

/// Applies `ops` in order, carrying any certificate along.
pub fn apply_elementary(row: &Row, ops: &[ElementaryOp]) -> Result<Row, UmrowError> {
    let len = row.len();
    let mut entries = row.entries.clone();
    let mut cert = row.certificate.clone();
    for op in ops {
        for index in [op.i, op.j] {
            if index == 0 || index > len {
                return Err(UmrowError::IndexOutOfRange { index, len });
            }
        }
        if op.i == op.j {
            return Err(UmrowError::SameIndex(op.i));
        }
        if op.h.nvars() != row.ring.nvars() {
            return Err(RingError::RingMismatch.into());
        }
        let (i, j) = (op.i - 1, op.j - 1);
        entries[i] = &entries[i] + &(&op.h * &entries[j]);
        if let Some(c) = &mut cert {
            // c_i a_i = c_i a_i' − c_i h a_j
            let shifted = &c.entry_cofactors[j] - &(&op.h * &c.entry_cofactors[i]);
            c.entry_cofactors[j] = shifted;
        }
    }
    if let Some(c) = &cert {
        debug_assert!(c.verify(&row.ring, &entries));
    }
    Ok(Row { ring: row.ring.clone(), entries, certificate: cert })
}

/// A polynomial with at most `max_terms` terms of degree ≤ `max_degree` and small integer coefficients.
pub fn random_poly(nvars: usize, max_degree: u32, max_terms: usize, rng: &mut impl Rng) -> Poly {
    let mut p = Poly::zero(nvars);
    let count = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..count {
        let deg = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; nvars];
        for _ in 0..deg {
            if nvars > 0 {
                e[rng.gen_range(0..nvars)] += 1;
            }
        }
        let c: i64 = rng.gen_range(-3..=3);
        p = &p + &Poly::monomial(Monomial(e), Rational::from_integer(c.into()));
    }
    p
}

/// Random operations on a row of length `len`.
pub fn random_ops(nvars: usize, len: usize, count: usize, max_degree: u32, rng: &mut impl Rng) -> Vec<ElementaryOp> {
    (0..count)
        .map(|_| {
            let i = rng.gen_range(1..=len);
            let mut j = rng.gen_range(1..len);
            if j >= i {
                j += 1;
            }
            ElementaryOp { i, j, h: random_poly(nvars, max_degree, 3, rng) }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s2() -> RingSpec {
        RingSpec::sphere(2)
    }

    #[test]
    fn unit_row_is_certified() {
        let r = Row::parse(&s2(), "1,0,0").unwrap();
        let Unimodularity::Certified(c) = is_unimodular(&r).unwrap() else { panic!() };
        assert!(c.verify(&s2(), r.entries()));
    }

    #[test]
    fn tangent_row_certified_and_pair_refuted() {
        let ring = s2();
        let r = Row::parse(&ring, "x,y,z").unwrap();
        assert!(is_unimodular(&r).unwrap().is_unimodular());
        let r = Row::parse(&ring, "x,y").unwrap();
        let Unimodularity::Refuted { basis } = is_unimodular(&r).unwrap() else { panic!() };
        // {x, y, z²−1}
        assert_eq!(basis.len(), 3);
        assert!(basis.contains(&ring.parse("z^2-1").unwrap()));
    }

    #[test]
    fn hand_certificate_for_tangent_row() {
        let ring = s2();
        let r = Row::parse(&ring, "x,y,z").unwrap();
        let good = Certificate { entry_cofactors: ring.parse_list("x,y,z").unwrap(), relation_cofactors: vec![ring.parse("-1").unwrap()] };
        assert!(good.verify(&ring, r.entries()));
        let bad = Certificate { relation_cofactors: vec![ring.parse("1").unwrap()], ..good };
        assert!(!bad.verify(&ring, r.entries()));
    }

    #[test]
    fn elementary_examples() {
        let ring = s2();
        let r = Row::parse(&ring, "1,0,0").unwrap().certified().unwrap();
        let op = ElementaryOp::new(2, 1, ring.parse("x").unwrap()).unwrap();
        let r1 = apply_elementary(&r, &[op.clone()]).unwrap();
        assert_eq!(r1.show(), ["1", "x", "0"]);
        assert_eq!(apply_elementary(&r1, &[op.inverse()]).unwrap().entries(), r.entries());
        let op2 = ElementaryOp::new(3, 1, ring.parse("y").unwrap()).unwrap();
        let r2 = apply_elementary(&r, &[op, op2]).unwrap();
        assert_eq!(r2.show(), ["1", "x", "y"]);
        assert!(r2.certificate().unwrap().verify(&ring, r2.entries()));
        let bad = ElementaryOp { i: 4, j: 1, h: Poly::one(3) };
        assert_eq!(apply_elementary(&r, &[bad]), Err(UmrowError::IndexOutOfRange { index: 4, len: 3 }));
        assert!(ElementaryOp::new(1, 1, Poly::one(3)).is_err());
    }

    #[test]
    fn op_json_roundtrip() {
        let ring = s2();
        let json: ElementaryOpJson = serde_json::from_str(r#"{"i":2,"j":1,"h":"x"}"#).unwrap();
        let op = ElementaryOp::from_json(&ring, &json).unwrap();
        assert_eq!(op.to_json(&ring), json);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn certificates_survive_transport(seed in any::<u64>()) {
            let ring = s2();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = Row::parse(&ring, "z,x,y").unwrap().certified().unwrap();
            let ops = random_ops(3, 3, 4, 2, &mut rng);
            let moved = apply_elementary(&r, &ops).unwrap();
            prop_assert!(moved.certificate().unwrap().verify(&ring, moved.entries()));
            let back: Vec<_> = ops.iter().rev().map(ElementaryOp::inverse).collect();
            let restored = apply_elementary(&moved, &back).unwrap();
            prop_assert_eq!(restored.entries(), r.entries());
        }
    }
}

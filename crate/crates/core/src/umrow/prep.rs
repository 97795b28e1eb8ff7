use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{apply_elementary, is_unimodular, ElementaryOp, Row, UmrowError, Unimodularity};
use crate::ring::{groebner_with, quotient_basis, FiniteAlgebra, GbConfig, MonomialOrder, Poly, RingError, RingSpec};
use crate::Rational;

/// Number of seeded attempts after the deterministic sweep.
pub const PREP_RETRIES: usize = 32;

#[derive(Clone, Debug)]
pub struct Prepared {
    pub row: Row,
    pub ops: Vec<ElementaryOp>,
    /// 0: unchanged, 1: the deterministic sweep, k ≥ 2: seeded retry k − 1.
    pub attempt: usize,
    pub algebra: FiniteAlgebra,
}

/// The quotient `A/(tail)`, or `None` when it is not zero-dimensional.
pub fn tail_algebra(
    ring: &RingSpec,
    tail: &[Poly],
    order: MonomialOrder,
    config: &GbConfig,
) -> Result<Option<FiniteAlgebra>, UmrowError> {
    let mut gens = ring.relations().to_vec();
    gens.extend(tail.iter().cloned());
    if gens.is_empty() {
        return Ok(None);
    }
    let gb = groebner_with(&gens, order, false, config)?;
    match quotient_basis(&gb) {
        Ok(alg) => Ok(Some(alg)),
        Err(RingError::NotZeroDimensional { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn prep_regular(row: &Row, seed: u64) -> Result<Prepared, UmrowError> {
    prep_regular_with(row, seed, MonomialOrder::DegRevLex, &GbConfig::default())
}

/// Moves `row` by elementary operations until `(relations, a₂, …, a_{d+1})` is zero-dimensional.
pub fn prep_regular_with(
    row: &Row,
    seed: u64,
    order: MonomialOrder,
    config: &GbConfig,
) -> Result<Prepared, UmrowError> {
    let ring = row.ring();
    let d = ring.dim();
    if !ring.is_complete_intersection() {
        return Err(UmrowError::Precondition("ring must be flagged complete intersection".into()));
    }
    if row.len() != d + 1 {
        return Err(UmrowError::Precondition(format!("row length {} does not match dimension {d}", row.len())));
    }
    let row = row.clone().certified()?;
    let nv = ring.nvars();

    let try_ops = |ops: Vec<ElementaryOp>, attempt: usize| -> Result<Option<Prepared>, UmrowError> {
        let moved = apply_elementary(&row, &ops)?;
        Ok(tail_algebra(ring, &moved.entries()[1..], order, config)?
            .map(|algebra| Prepared { row: moved, ops, attempt, algebra }))
    };

    if let Some(p) = try_ops(Vec::new(), 0)? {
        return Ok(p);
    }
    let sweep = (2..=d + 1)
        .map(|i| ElementaryOp { i, j: 1, h: Poly::var(nv, i - 2) })
        .collect();
    if let Some(p) = try_ops(sweep, 1)? {
        return Ok(p);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..PREP_RETRIES {
        let mut ops = Vec::new();
        for i in 2..=d + 1 {
            let j = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(1..=d + 1) };
            if j == i {
                continue;
            }
            ops.push(ElementaryOp { i, j, h: random_affine(nv, &mut rng) });
        }
        if let Some(p) = try_ops(ops, k + 2)? {
            return Ok(p);
        }
    }
    Err(UmrowError::RetryBudget { attempts: PREP_RETRIES + 2 })
}

fn random_affine(nv: usize, rng: &mut impl Rng) -> Poly {
    let mut p = Poly::from_int(nv, rng.gen_range(-2..=2));
    for v in 0..nv {
        let c: i64 = rng.gen_range(-2..=2);
        if c != 0 {
            p = &p + &Poly::var(nv, v).scale(&Rational::from_integer(c.into()));
        }
    }
    p
}

/// The three rows of a WMS relation `(x, v)`, `(1−x, v)`, `(x(1−x), v)`.
#[derive(Clone, Debug)]
pub struct WmsInstance {
    pub row_x: Row,
    pub row_one_minus_x: Row,
    pub row_product: Row,
}

#[derive(Clone, Debug)]
pub enum WmsOutcome {
    Instance(WmsInstance),
    Rejected { failing: &'static str, basis: Vec<Poly> },
}

pub fn wms_relation_instance(ring: &RingSpec, x: &Poly, v: &[Poly]) -> Result<WmsOutcome, UmrowError> {
    let nv = ring.nvars();
    let one_minus = &Poly::one(nv) - x;
    let product = x * &one_minus;
    let mut rows = Vec::new();
    for (name, first) in [("x", x.clone()), ("1-x", one_minus), ("x(1-x)", product)] {
        let mut entries = vec![first];
        entries.extend(v.iter().cloned());
        let row = Row::new(ring, entries)?;
        match is_unimodular(&row)? {
            Unimodularity::Certified(c) => rows.push(row.with_certificate(c)?),
            Unimodularity::Refuted { basis } => return Ok(WmsOutcome::Rejected { failing: name, basis }),
        }
    }
    let mut it = rows.into_iter();
    Ok(WmsOutcome::Instance(WmsInstance {
        row_x: it.next().expect("three rows"),
        row_one_minus_x: it.next().expect("three rows"),
        row_product: it.next().expect("three rows"),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pole {
    North,
    South,
}

/// `(a, x₁, …, x_d)` on `S^d` with `a = α` at the chosen pole, `a = 1` at the other, `a` affine in `x_{d+1}`.
pub fn row_from_point(ring: &RingSpec, pole: Pole, alpha: &Rational) -> Result<Row, UmrowError> {
    let d = ring.dim();
    if d == 0 || ring.relations() != RingSpec::sphere(d).relations() {
        return Err(UmrowError::Precondition("row_from_point needs a sphere ring".into()));
    }
    if alpha.is_zero() {
        return Err(UmrowError::ZeroAlpha);
    }
    let nv = d + 1;
    let two = Rational::from_integer(2.into());
    let slope = (alpha - Rational::one()) / &two;
    let slope = if pole == Pole::North { slope } else { -slope };
    let constant = (alpha + Rational::one()) / &two;
    let a = &Poly::var(nv, d).scale(&slope) + &Poly::constant(nv, constant);
    let mut entries = vec![a];
    entries.extend((0..d).map(|i| Poly::var(nv, i)));
    Row::new(ring, entries)?.certified()
}

use std::collections::HashSet;

use num_traits::One;

use super::cache::GbCache;
use super::monomial::{Monomial, MonomialOrder};
use super::poly::{axpy_terms, Poly, Term};
use super::RingError;
use crate::Rational;

/// Default number of S-pairs Buchberger may process before aborting.
pub const DEFAULT_PAIR_LIMIT: usize = 200_000;

#[derive(Clone, Debug)]
pub struct GbConfig {
    pub pair_limit: usize,
    pub cache: Option<GbCache>,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { pair_limit: DEFAULT_PAIR_LIMIT, cache: GbCache::from_env() }
    }
}

/// A reduced Gröbner basis, optionally with cofactors in the input generators.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    basis: Vec<Poly>,
    sorted: Vec<Vec<Term>>,
    /// `cofactors[k][i]` is the coefficient of input `i` in basis element `k`.
    cofactors: Option<Vec<Vec<Poly>>>,
    inputs: usize,
}

#[derive(Clone)]
struct Tracked {
    terms: Vec<Term>,
    cof: Option<Vec<Poly>>,
}

impl Tracked {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        let lc = self.terms[0].1.clone();
        if lc.is_one() {
            return;
        }
        let inv = lc.recip();
        for t in &mut self.terms {
            t.1 *= &inv;
        }
        if let Some(cof) = &mut self.cof {
            for c in cof.iter_mut() {
                *c = c.scale(&inv);
            }
        }
    }

    /// self -= c * m * other
    fn sub_mul(&mut self, c: &Rational, m: &Monomial, other: &Tracked, order: MonomialOrder) {
        let neg = -c;
        self.terms = axpy_terms(&self.terms, &neg, m, &other.terms, order);
        if let (Some(mine), Some(theirs)) = (&mut self.cof, &other.cof) {
            for (a, b) in mine.iter_mut().zip(theirs) {
                if !b.is_zero() {
                    *a = &*a + &b.mul_monomial(m).scale(&neg);
                }
            }
        }
    }
}

fn find_divisor<'a>(basis: &'a [Tracked], m: &Monomial) -> Option<&'a Tracked> {
    basis.iter().find(|g| g.lm().divides(m))
}

/// Full reduction of `p` by `basis` (every basis element monic).
fn reduce_tracked(mut p: Tracked, basis: &[Tracked], order: MonomialOrder) -> Tracked {
    let mut rem: Vec<Term> = Vec::new();
    while !p.terms.is_empty() {
        let (m, c) = p.terms[0].clone();
        match find_divisor(basis, &m) {
            Some(g) => {
                let shift = g.lm().quotient_of(&m);
                // g is monic, so the multiplier is just c
                p.sub_mul(&c, &shift, g, order);
            }
            None => {
                rem.push(p.terms.remove(0));
            }
        }
    }
    p.terms = rem;
    p
}

fn s_poly(a: &Tracked, b: &Tracked, order: MonomialOrder) -> Tracked {
    let l = a.lm().lcm(b.lm());
    let ma = a.lm().quotient_of(&l);
    let mb = b.lm().quotient_of(&l);
    let mut s = Tracked {
        terms: a.terms.iter().map(|(m, c)| (m.mul(&ma), c.clone())).collect(),
        cof: a.cof.as_ref().map(|cs| cs.iter().map(|c| c.mul_monomial(&ma)).collect()),
    };
    s.sub_mul(&Rational::one(), &mb, b, order);
    s
}

pub fn groebner(gens: &[Poly], order: MonomialOrder, with_cofactors: bool) -> Result<GroebnerBasis, RingError> {
    groebner_with(gens, order, with_cofactors, &GbConfig::default())
}

pub fn groebner_with(
    gens: &[Poly],
    order: MonomialOrder,
    with_cofactors: bool,
    config: &GbConfig,
) -> Result<GroebnerBasis, RingError> {
    let nvars = match gens.first() {
        Some(g) => g.nvars(),
        None => return Err(RingError::EmptyGenerators),
    };
    if gens.iter().any(|g| g.nvars() != nvars) {
        return Err(RingError::RingMismatch);
    }
    if let Some(cache) = &config.cache {
        if let Some(hit) = cache.load(gens, order, with_cofactors) {
            return Ok(hit);
        }
    }
    let gb = buchberger(gens, nvars, order, with_cofactors, config.pair_limit)?;
    if let Some(cache) = &config.cache {
        cache.store(gens, order, with_cofactors, &gb);
    }
    Ok(gb)
}

fn buchberger(
    gens: &[Poly],
    nvars: usize,
    order: MonomialOrder,
    with_cofactors: bool,
    pair_limit: usize,
) -> Result<GroebnerBasis, RingError> {
    let inputs = gens.len();
    let mut basis: Vec<Tracked> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let cof = with_cofactors.then(|| {
            (0..inputs).map(|k| if k == i { Poly::one(nvars) } else { Poly::zero(nvars) }).collect()
        });
        let mut t = Tracked { terms: g.terms_in(order), cof };
        t.make_monic();
        basis.push(t);
    }

    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    let mut processed = 0usize;
    let mut unit: Option<Tracked> = basis.iter().find(|g| g.lm().is_one()).cloned();

    while unit.is_none() && !pending.is_empty() {
        // normal selection strategy: smallest lcm first, ties by index
        let &(i, j) = pending
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let l1 = basis[a].lm().lcm(basis[b].lm());
                let l2 = basis[c].lm().lcm(basis[d].lm());
                order.cmp(&l1, &l2).then((a, b).cmp(&(c, d)))
            })
            .expect("nonempty");
        pending.remove(&(i, j));
        processed += 1;
        if processed > pair_limit {
            return Err(RingError::ResourceLimit { pairs: pair_limit });
        }
        let (li, lj) = (basis[i].lm(), basis[j].lm());
        if li.coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let mut r = reduce_tracked(s, &basis, order);
        if r.terms.is_empty() {
            continue;
        }
        r.make_monic();
        let n = basis.len();
        let is_unit = r.lm().is_one();
        basis.push(r);
        if is_unit {
            unit = Some(basis[n].clone());
            break;
        }
        for k in 0..n {
            pending.insert((k, n));
        }
    }

    let reduced = match unit {
        Some(u) => vec![u],
        None => interreduce(basis, order),
    };
    Ok(GroebnerBasis::from_tracked(nvars, order, reduced, inputs))
}

fn interreduce(basis: Vec<Tracked>, order: MonomialOrder) -> Vec<Tracked> {
    // minimal basis: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Tracked> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != idx && h.lm().divides(g.lm()) && (h.lm() != g.lm() || k < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Tracked> =
            minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g.clone()).collect();
        let mut g = minimal[k].clone();
        let head = g.terms.remove(0);
        let mut tail = reduce_tracked(g, &others, order);
        let mut terms = vec![head];
        terms.append(&mut tail.terms);
        tail.terms = terms;
        tail.make_monic();
        out.push(tail);
        // later tail reductions use the already reduced elements
        minimal[k] = out[k].clone();
    }
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    out
}

impl GroebnerBasis {
    fn from_tracked(nvars: usize, order: MonomialOrder, items: Vec<Tracked>, inputs: usize) -> Self {
        let with_cof = items.first().map(|t| t.cof.is_some()).unwrap_or(false);
        let mut basis = Vec::new();
        let mut sorted = Vec::new();
        let mut cofs = Vec::new();
        for t in items {
            basis.push(Poly::from_terms(nvars, t.terms.iter().cloned()));
            sorted.push(t.terms);
            if let Some(c) = t.cof {
                cofs.push(c);
            }
        }
        GroebnerBasis { nvars, order, basis, sorted, cofactors: with_cof.then_some(cofs), inputs }
    }

    pub(crate) fn from_parts(
        nvars: usize,
        order: MonomialOrder,
        basis: Vec<Poly>,
        cofactors: Option<Vec<Vec<Poly>>>,
        inputs: usize,
    ) -> Self {
        let sorted = basis.iter().map(|p| p.terms_in(order)).collect();
        GroebnerBasis { nvars, order, basis, sorted, cofactors, inputs }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn cofactors(&self) -> Option<&[Vec<Poly>]> {
        self.cofactors.as_deref()
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|t| t[0].0.clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.sorted.len() == 1 && self.sorted[0][0].0.is_one()
    }

    fn tracked(&self) -> Vec<Tracked> {
        self.sorted.iter().map(|t| Tracked { terms: t.clone(), cof: None }).collect()
    }

    /// Normal form of `p`.
    pub fn reduce(&self, p: &Poly) -> Result<Poly, RingError> {
        if p.nvars() != self.nvars {
            return Err(RingError::RingMismatch);
        }
        if self.sorted.is_empty() {
            return Ok(p.clone());
        }
        let r = reduce_tracked(Tracked { terms: p.terms_in(self.order), cof: None }, &self.tracked(), self.order);
        Ok(Poly::from_terms(self.nvars, r.terms))
    }

    /// Division with quotients: `p = Σ q_k g_k + r`.
    pub fn divide(&self, p: &Poly) -> Result<(Vec<Poly>, Poly), RingError> {
        if p.nvars() != self.nvars {
            return Err(RingError::RingMismatch);
        }
        let k = self.sorted.len();
        let mut quotients = vec![Poly::zero(self.nvars); k];
        let basis = self.tracked();
        let mut work = p.terms_in(self.order);
        let mut rem: Vec<Term> = Vec::new();
        while !work.is_empty() {
            let (m, c) = work[0].clone();
            match basis.iter().position(|g| g.lm().divides(&m)) {
                Some(idx) => {
                    let shift = basis[idx].lm().quotient_of(&m);
                    work = axpy_terms(&work, &-&c, &shift, &basis[idx].terms, self.order);
                    quotients[idx] = &quotients[idx] + &Poly::monomial(shift, c);
                }
                None => rem.push(work.remove(0)),
            }
        }
        Ok((quotients, Poly::from_terms(self.nvars, rem)))
    }

    pub fn contains(&self, p: &Poly) -> Result<bool, RingError> {
        Ok(self.reduce(p)?.is_zero())
    }
}

/// Cofactors `c` with `Σ c_i gens_i = p`, or `None` when `p` is not in the ideal.
pub fn membership_certificate(p: &Poly, gens: &[Poly]) -> Result<Option<Vec<Poly>>, RingError> {
    membership_certificate_with(p, gens, &GbConfig::default())
}

pub fn membership_certificate_with(
    p: &Poly,
    gens: &[Poly],
    config: &GbConfig,
) -> Result<Option<Vec<Poly>>, RingError> {
    let nvars = p.nvars();
    if gens.is_empty() {
        return Ok(p.is_zero().then(Vec::new));
    }
    let gb = groebner_with(gens, MonomialOrder::DegRevLex, true, config)?;
    let (quotients, rem) = gb.divide(p)?;
    if !rem.is_zero() {
        return Ok(None);
    }
    let cof = gb.cofactors().expect("requested cofactors");
    let mut out = vec![Poly::zero(nvars); gens.len()];
    for (q, row) in quotients.iter().zip(cof) {
        if q.is_zero() {
            continue;
        }
        for (slot, c) in out.iter_mut().zip(row) {
            if !c.is_zero() {
                *slot = &*slot + &(q * c);
            }
        }
    }
    debug_assert!(check_combination(&out, gens, p));
    Ok(Some(out))
}

/// Whether `Σ c_i g_i == p` holds exactly.
pub fn check_combination(cofactors: &[Poly], gens: &[Poly], p: &Poly) -> bool {
    if cofactors.len() != gens.len() {
        return false;
    }
    let mut total = Poly::zero(p.nvars());
    for (c, g) in cofactors.iter().zip(gens) {
        total = &total + &(c * g);
    }
    total == *p
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_poly;
    use super::*;
    use proptest::prelude::*;

    fn vars() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &vars()).unwrap()
    }

    fn no_cache() -> GbConfig {
        GbConfig { pair_limit: DEFAULT_PAIR_LIMIT, cache: None }
    }

    #[test]
    fn already_reduced() {
        let gb = groebner_with(&[p("x"), p("y")], MonomialOrder::Lex, false, &no_cache()).unwrap();
        assert_eq!(gb.basis(), &[p("y"), p("x")]);
    }

    #[test]
    fn sphere_with_two_coordinates() {
        let gb = groebner_with(&[p("x^2+y^2+z^2-1"), p("x"), p("y")], MonomialOrder::Lex, true, &no_cache()).unwrap();
        let mut got: Vec<Poly> = gb.basis().to_vec();
        got.sort_by_key(|q| q.to_string_with(&vars()));
        assert_eq!(got, vec![p("x"), p("y"), p("z^2-1")]);
        // cofactor identity for every basis element
        let inputs = [p("x^2+y^2+z^2-1"), p("x"), p("y")];
        for (g, cof) in gb.basis().iter().zip(gb.cofactors().unwrap()) {
            assert!(check_combination(cof, &inputs, g));
        }
    }

    #[test]
    fn unit_ideal() {
        let gb = groebner_with(&[p("x"), p("1-x")], MonomialOrder::DegRevLex, false, &no_cache()).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.basis(), &[p("1")]);
    }

    #[test]
    fn reductions() {
        let gb = groebner_with(&[p("x"), p("y"), p("z^2-1")], MonomialOrder::DegRevLex, false, &no_cache()).unwrap();
        assert_eq!(gb.reduce(&p("z^2")).unwrap(), p("1"));
        assert_eq!(gb.reduce(&p("x*(y^3+z+7)")).unwrap(), p("0"));
        assert_eq!(gb.reduce(&p("z^3+z")).unwrap(), p("2*z"));
    }

    #[test]
    fn ring_mismatch_rejected() {
        let gb = groebner_with(&[p("x")], MonomialOrder::DegRevLex, false, &no_cache()).unwrap();
        assert!(matches!(gb.reduce(&Poly::var(2, 0)), Err(RingError::RingMismatch)));
    }

    #[test]
    fn certificates() {
        let c = membership_certificate_with(&p("1"), &[p("x"), p("1-x")], &no_cache()).unwrap().unwrap();
        assert_eq!(c, vec![p("1"), p("1")]);
        let none = membership_certificate_with(&p("1"), &[p("x"), p("y"), p("x^2+y^2+z^2-1")], &no_cache()).unwrap();
        assert!(none.is_none());
        let gens = [p("x"), p("y"), p("z"), p("x^2+y^2+z^2-1")];
        let c = membership_certificate_with(&p("1"), &gens, &no_cache()).unwrap().unwrap();
        assert!(check_combination(&c, &gens, &p("1")));
    }

    #[test]
    fn pair_limit_aborts() {
        let cfg = GbConfig { pair_limit: 0, cache: None };
        let r = groebner_with(&[p("x^2-y"), p("x*y-1")], MonomialOrder::DegRevLex, false, &cfg);
        assert!(matches!(r, Err(RingError::ResourceLimit { .. })));
    }

    #[test]
    fn cyclic3_is_consistent() {
        let gens = [p("x+y+z"), p("x*y+y*z+z*x"), p("x*y*z-1")];
        let gb = groebner_with(&gens, MonomialOrder::DegRevLex, true, &no_cache()).unwrap();
        for g in &gens {
            assert!(gb.contains(g).unwrap());
        }
        for (g, cof) in gb.basis().iter().zip(gb.cofactors().unwrap()) {
            assert!(check_combination(cof, &gens, g));
        }
        let lex = groebner_with(&gens, MonomialOrder::Lex, false, &no_cache()).unwrap();
        // z^3 - 1 is the eliminant in the last variable
        assert!(lex.basis().contains(&p("z^3-1")));
    }

    fn arb_small() -> impl Strategy<Value = Poly> {
        let term = (-3i64..4, 0u32..3, 0u32..3, 0u32..2);
        prop::collection::vec(term, 1..4).prop_map(|ts| {
            Poly::from_terms(3, ts.into_iter().map(|(c, a, b, d)| (Monomial(vec![a, b, d]), Rational::from_integer(c.into()))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn certificates_reexpand(gens in prop::collection::vec(arb_small(), 1..4), target in arb_small()) {
            prop_assume!(gens.iter().any(|g| !g.is_zero()));
            let cfg = no_cache();
            let gb = groebner_with(&gens, MonomialOrder::DegRevLex, false, &cfg).unwrap();
            let member = gb.contains(&target).unwrap();
            let cert = membership_certificate_with(&target, &gens, &cfg).unwrap();
            prop_assert_eq!(cert.is_some(), member);
            if let Some(c) = cert {
                prop_assert!(check_combination(&c, &gens, &target));
            }
            let once = gb.reduce(&target).unwrap();
            prop_assert_eq!(gb.reduce(&once).unwrap(), once);
        }
    }
}

use std::collections::{HashMap, VecDeque};

use num_traits::Zero;

use super::groebner::GroebnerBasis;
use super::monomial::Monomial;
use super::poly::Poly;
use super::RingError;
use crate::linalg::Matrix;
use crate::Rational;

/// A zero-dimensional quotient `ℚ[x]/I` presented by its staircase basis.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    mult: Vec<Matrix>,
}

/// Staircase basis and multiplication matrices of the quotient by `gb`.
pub fn quotient_basis(gb: &GroebnerBasis) -> Result<FiniteAlgebra, RingError> {
    let n = gb.nvars();
    if gb.is_unit_ideal() {
        return Ok(FiniteAlgebra { gb: gb.clone(), basis: Vec::new(), index: HashMap::new(), mult: vec![Matrix::zeros(0, 0); n] });
    }
    let lms = gb.leading_monomials();
    for v in 0..n {
        if !lms.iter().any(|m| m.pure_power().is_some_and(|(i, _)| i == v)) {
            return Err(RingError::NotZeroDimensional { variable: v });
        }
    }
    let under = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
    let mut basis = vec![Monomial::one(n)];
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    index.insert(Monomial::one(n), 0);
    let mut queue = VecDeque::from([Monomial::one(n)]);
    while let Some(m) = queue.pop_front() {
        for v in 0..n {
            let next = m.mul(&Monomial::var(n, v));
            if !index.contains_key(&next) && under(&next) {
                index.insert(next.clone(), usize::MAX);
                basis.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    let order = gb.order();
    basis.sort_by(|a, b| order.cmp(a, b));
    let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut alg = FiniteAlgebra { gb: gb.clone(), basis, index, mult: Vec::new() };
    let mult = (0..n).map(|v| alg.mult_matrix_unchecked(&Poly::var(n, v))).collect::<Result<Vec<_>, _>>()?;
    alg.mult = mult;
    Ok(alg)
}

impl FiniteAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn nvars(&self) -> usize {
        self.gb.nvars()
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Staircase monomials, ascending in the basis' monomial order (so `1` first).
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_poly(&self, i: usize) -> Poly {
        Poly::monomial(self.basis[i].clone(), Rational::from_integer(1.into()))
    }

    /// Matrix of multiplication by variable `v`; column `j` holds `x_v · b_j`.
    pub fn mult_matrix_var(&self, v: usize) -> &Matrix {
        &self.mult[v]
    }

    pub fn mult_matrices(&self) -> &[Matrix] {
        &self.mult
    }

    /// Coordinates of the normal form of `p` in the staircase basis.
    pub fn coords(&self, p: &Poly) -> Result<Vec<Rational>, RingError> {
        let r = self.gb.reduce(p)?;
        let mut v = vec![Rational::zero(); self.dim()];
        for (m, c) in r.terms() {
            let i = self.index.get(m).expect("normal form lies in the staircase span");
            v[*i] = c.clone();
        }
        Ok(v)
    }

    pub fn element(&self, coords: &[Rational]) -> Poly {
        Poly::from_terms(
            self.nvars(),
            coords.iter().zip(&self.basis).filter(|(c, _)| !c.is_zero()).map(|(c, m)| (m.clone(), c.clone())),
        )
    }

    fn mult_matrix_unchecked(&self, p: &Poly) -> Result<Matrix, RingError> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            let col = self.coords(&p.mul_monomial(&self.basis[j]))?;
            for (i, c) in col.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        Ok(m)
    }

    pub fn mult_matrix(&self, p: &Poly) -> Result<Matrix, RingError> {
        self.mult_matrix_unchecked(p)
    }

    pub fn trace(&self, p: &Poly) -> Result<Rational, RingError> {
        Ok(self.mult_matrix(p)?.trace())
    }

    /// Whether `p` is a unit of the algebra.
    pub fn is_unit(&self, p: &Poly) -> Result<bool, RingError> {
        Ok(self.dim() == 0 || !self.mult_matrix(p)?.det().map_err(|_| RingError::RingMismatch)?.is_zero())
    }

    /// Inverse of a unit, as a normal-form polynomial.
    pub fn inverse(&self, p: &Poly) -> Result<Option<Poly>, RingError> {
        let m = self.mult_matrix(p)?;
        let mut one = vec![Rational::zero(); self.dim()];
        if let Some(first) = one.first_mut() {
            *first = Rational::from_integer(1.into());
        }
        match m.inverse() {
            Ok(inv) => Ok(Some(self.element(&inv.mul_vec(&one)))),
            Err(_) => Ok(None),
        }
    }
}

/// The trace form `(i, j) ↦ Tr(b_i b_j)`.
pub fn trace_form(alg: &FiniteAlgebra) -> Result<Matrix, RingError> {
    let d = alg.dim();
    let traces: Vec<Rational> = (0..d).map(|k| alg.trace(&alg.basis_poly(k))).collect::<Result<_, _>>()?;
    let mut out = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let prod = alg.basis[i].mul(&alg.basis[j]);
            let c = alg.coords(&Poly::monomial(prod, Rational::from_integer(1.into())))?;
            let t = c.iter().zip(&traces).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
            out[(i, j)] = t.clone();
            out[(j, i)] = t;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::groebner::{groebner_with, GbConfig};
    use super::super::monomial::MonomialOrder;
    use super::super::parse::parse_poly;
    use super::*;
    use crate::linalg::signature;

    fn cfg() -> GbConfig {
        GbConfig { pair_limit: 10_000, cache: None }
    }

    fn alg(gens: &[&str], vars: &[&str]) -> Result<FiniteAlgebra, RingError> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens: Vec<Poly> = gens.iter().map(|s| parse_poly(s, &vars).unwrap()).collect();
        let gb = groebner_with(&gens, MonomialOrder::DegRevLex, false, &cfg()).unwrap();
        quotient_basis(&gb)
    }

    #[test]
    fn sphere_slice_has_two_points() {
        let a = alg(&["x", "y", "z^2-1"], &["x", "y", "z"]).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.basis(), &[Monomial(vec![0, 0, 0]), Monomial(vec![0, 0, 1])]);
    }

    #[test]
    fn unit_ideal_is_empty() {
        let a = alg(&["x", "1-x"], &["x"]).unwrap();
        assert_eq!(a.dim(), 0);
    }

    #[test]
    fn idempotent_multiplication_matrix() {
        let a = alg(&["x^2-x"], &["x"]).unwrap();
        assert_eq!(a.mult_matrix_var(0), &Matrix::from_ints(&[&[0, 0], &[1, 1]]));
    }

    #[test]
    fn positive_dimensional_rejected() {
        let e = alg(&["x^2+y^2+z^2-1", "x"], &["x", "y", "z"]).unwrap_err();
        assert!(matches!(e, RingError::NotZeroDimensional { .. }));
    }

    #[test]
    fn trace_forms() {
        let a = alg(&["z^2-1"], &["z"]).unwrap();
        let t = trace_form(&a).unwrap();
        assert_eq!(t, Matrix::from_ints(&[&[2, 0], &[0, 2]]));
        assert_eq!(signature(&t).unwrap(), 2);
        let a = alg(&["z^2+1"], &["z"]).unwrap();
        let t = trace_form(&a).unwrap();
        assert_eq!(t, Matrix::from_ints(&[&[2, 0], &[0, -2]]));
        assert_eq!(signature(&t).unwrap(), 0);
        let a = alg(&["z"], &["z"]).unwrap();
        assert_eq!(trace_form(&a).unwrap(), Matrix::from_ints(&[&[1]]));
    }

    #[test]
    fn matrices_commute() {
        let a = alg(&["x^2+y^2-2", "x*y-1"], &["x", "y"]).unwrap();
        let (mx, my) = (a.mult_matrix_var(0), a.mult_matrix_var(1));
        assert_eq!(mx.mul(my).unwrap(), my.mul(mx).unwrap());
    }

    #[test]
    fn inverse_of_unit() {
        let a = alg(&["z^2-1"], &["z"]).unwrap();
        let vars = vec!["z".to_string()];
        let z = parse_poly("z", &vars).unwrap();
        assert_eq!(a.inverse(&z).unwrap().unwrap(), z);
        let zp1 = parse_poly("z+1", &vars).unwrap();
        assert!(a.inverse(&zp1).unwrap().is_none());
    }
}

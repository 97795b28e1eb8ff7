use std::collections::HashMap;

use num_traits::Zero;

use super::EulerError;
use crate::linalg::{inertia, Matrix};
use crate::ring::{det_with, groebner_with, FiniteAlgebra, GbConfig, Monomial, MonomialOrder, Poly, RingSpec};
use crate::umrow::tail_algebra;
use crate::Rational;

/// The residue form of `B = A/(a₂, …, a_{d+1})`.
#[derive(Clone, Debug)]
pub struct LocalForm {
    pub algebra: FiniteAlgebra,
    /// `λ(b_j)` on the staircase basis.
    pub functional: Vec<Rational>,
    /// `λ(b_i b_j)`.
    pub gram: Matrix,
    /// Jacobian determinant of `(relations, tail)`, reduced into `B`.
    pub jacobian: Poly,
}

/// `(P(y₁..y_{j-1}, x_j, ..) − P(y₁..y_j, x_{j+1}, ..)) / (x_j − y_j)` over `2N` variables.
fn divided_difference(p: &Poly, j: usize) -> Poly {
    let n = p.nvars();
    let mut out = Poly::zero(2 * n);
    for (m, c) in p.terms() {
        let e = m.0[j];
        if e == 0 {
            continue;
        }
        let mut base = vec![0u32; 2 * n];
        for k in 0..n {
            if k < j {
                base[n + k] = m.0[k];
            } else if k > j {
                base[k] = m.0[k];
            }
        }
        for s in 0..e {
            let mut exp = base.clone();
            exp[j] = s;
            exp[n + j] = e - 1 - s;
            out = &out + &Poly::monomial(Monomial(exp), c.clone());
        }
    }
    out
}

fn shift_to_y(p: &Poly) -> Poly {
    let n = p.nvars();
    let images: Vec<Poly> = (0..n).map(|i| Poly::var(2 * n, n + i)).collect();
    p.compose(&images)
}

fn jacobian_det(f: &[Poly], normalize: &dyn Fn(Poly) -> Poly) -> Poly {
    let n = f.len();
    let m: Vec<Vec<Poly>> = f.iter().map(|p| (0..n).map(|j| p.derivative(j)).collect()).collect();
    det_with(&m, n, normalize)
}

pub fn local_form(ring: &RingSpec, tail: &[Poly]) -> Result<LocalForm, EulerError> {
    local_form_with(ring, tail, MonomialOrder::DegRevLex, &GbConfig::default())
}

/// Builds the residue functional from the Bezoutian of `(relations, tail)`.
///
/// Writing the reduced Bezoutian as `Σ c_{αβ} b_α(x) b_β(y)`, the gram of the
/// residue pairing is `C^{-T}`; `λ` is its row at `b₀ = 1`.
pub fn local_form_with(
    ring: &RingSpec,
    tail: &[Poly],
    order: MonomialOrder,
    config: &GbConfig,
) -> Result<LocalForm, EulerError> {
    let n = ring.nvars();
    if !ring.is_complete_intersection() {
        return Err(EulerError::Precondition("ring must be flagged complete intersection".into()));
    }
    if ring.dim() == 0 {
        return Err(EulerError::Precondition("the ring must have positive dimension".into()));
    }
    if tail.len() != ring.dim() {
        return Err(EulerError::Precondition(format!("tail has {} entries, expected {}", tail.len(), ring.dim())));
    }
    let algebra = tail_algebra(ring, tail, order, config)?.ok_or(EulerError::NotZeroDimensional)?;
    let f: Vec<Poly> = ring.relations().iter().chain(tail).cloned().collect();
    let gb = algebra.groebner_basis();
    let reduce = |p: Poly| gb.reduce(&p).expect("same ring");
    let jacobian = jacobian_det(&f, &reduce);
    let dim = algebra.dim();
    if dim == 0 {
        return Ok(LocalForm { algebra, functional: Vec::new(), gram: Matrix::zeros(0, 0), jacobian });
    }

    let mut both: Vec<Poly> = gb.basis().iter().map(|p| p.extend_vars(n)).collect();
    both.extend(gb.basis().iter().map(shift_to_y));
    let gb2 = groebner_with(&both, order, false, config)?;
    let entries: Vec<Vec<Poly>> = f.iter().map(|p| (0..n).map(|j| divided_difference(p, j)).collect()).collect();
    let bez = det_with(&entries, 2 * n, &|p| gb2.reduce(&p).expect("same ring"));

    let index: HashMap<&Monomial, usize> = algebra.basis().iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut c = Matrix::zeros(dim, dim);
    for (m, coef) in bez.terms() {
        let a = Monomial(m.0[..n].to_vec());
        let b = Monomial(m.0[n..].to_vec());
        let (Some(&i), Some(&j)) = (index.get(&a), index.get(&b)) else {
            unreachable!("reduced Bezoutian lies in the staircase span");
        };
        c[(i, j)] = coef.clone();
    }
    let gram = c.inverse().map_err(|_| EulerError::Degenerate("Bezoutian matrix is singular".into()))?.transpose();
    if !gram.is_symmetric() {
        return Err(EulerError::Degenerate("residue pairing is not symmetric".into()));
    }
    let functional = gram.row(0).to_vec();
    let form = LocalForm { algebra, functional, gram, jacobian };
    debug_assert_eq!(form.apply(&form.jacobian)?, Rational::from_integer(dim.into()));
    Ok(form)
}

impl LocalForm {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `λ(p)`.
    pub fn apply(&self, p: &Poly) -> Result<Rational, EulerError> {
        let coords = self.algebra.coords(p)?;
        Ok(coords.iter().zip(&self.functional).map(|(a, b)| a * b).fold(Rational::zero(), |s, t| s + t))
    }

    /// The gram of `(f, g) ↦ λ(w·f·g)`.
    pub fn weighted_gram(&self, w: &Poly) -> Result<Matrix, EulerError> {
        let dim = self.dim();
        let mw = self.algebra.mult_matrix(w)?;
        // ℓ(f) = λ(w f)
        let ell: Vec<Rational> = (0..dim)
            .map(|k| (0..dim).map(|r| &self.functional[r] * &mw[(r, k)]).fold(Rational::zero(), |s, t| s + t))
            .collect();
        let mut g = Matrix::zeros(dim, dim);
        for a in 0..dim {
            let ma = self.algebra.mult_matrix(&self.algebra.basis_poly(a))?;
            for b in a..dim {
                let v: Rational = (0..dim).map(|r| &ell[r] * &ma[(r, b)]).fold(Rational::zero(), |s, t| s + t);
                g[(a, b)] = v.clone();
                g[(b, a)] = v;
            }
        }
        Ok(g)
    }

    pub fn weighted_signature(&self, w: &Poly) -> Result<i64, EulerError> {
        Ok(inertia(&self.weighted_gram(w)?)?.signature())
    }
}

/// Exact signature of a symmetric rational matrix.
pub fn signature(gram: &Matrix) -> Result<i64, EulerError> {
    Ok(inertia(gram)?.signature())
}

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::local::{local_form_with, LocalForm};
use super::EulerError;
use crate::linalg::Matrix;
use crate::ring::{GbConfig, MonomialOrder, Poly, RingSpec};
use crate::umrow::{prep_regular_with, ElementaryOp, Row, WmsInstance};
use crate::Rational;

pub const CONVENTION: &str = "tangent=+1";

/// Polynomials whose signs tell the compact components of `X(ℝ)` apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSeparator {
    pub labels: Vec<String>,
    pub separators: Vec<Poly>,
    /// `signs[c][k]`: sign of separator `k` on component `c`.
    pub signs: Vec<Vec<i8>>,
}

impl ComponentSeparator {
    pub fn single(label: &str) -> Self {
        ComponentSeparator { labels: vec![label.to_string()], separators: Vec::new(), signs: vec![Vec::new()] }
    }

    /// `S2`, `S3`, ... for built-in spheres, `X` otherwise.
    pub fn for_ring(ring: &RingSpec) -> Self {
        let d = ring.dim();
        if d > 0 && ring.relations() == RingSpec::sphere(d).relations() {
            Self::single(&format!("S{d}"))
        } else {
            Self::single("X")
        }
    }

    pub fn new(labels: Vec<String>, separators: Vec<Poly>, signs: Vec<Vec<i8>>) -> Result<Self, EulerError> {
        if labels.is_empty() || signs.len() != labels.len() {
            return Err(EulerError::Separator("one sign row per component is required".into()));
        }
        if signs.iter().any(|r| r.len() != separators.len() || r.iter().any(|s| *s != 1 && *s != -1)) {
            return Err(EulerError::Separator("sign table entries must be ±1, one per separator".into()));
        }
        if separators.len() > 12 {
            return Err(EulerError::Separator("at most 12 separators are supported".into()));
        }
        Ok(ComponentSeparator { labels, separators, signs })
    }
}

/// The φ-class: one integer per labeled component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointedClass {
    pub components: Vec<String>,
    pub class: Vec<i64>,
    pub convention: &'static str,
}

impl PointedClass {
    pub fn is_zero(&self) -> bool {
        self.class.iter().all(|c| *c == 0)
    }

    pub fn add(&self, other: &PointedClass) -> PointedClass {
        let class = self.class.iter().zip(&other.class).map(|(a, b)| a + b).collect();
        PointedClass { class, ..self.clone() }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClassOptions {
    pub seed: u64,
    pub order: MonomialOrder,
    pub config: GbConfig,
}

/// A class together with how it was obtained.
#[derive(Clone, Debug)]
pub struct ClassComputation {
    pub class: PointedClass,
    pub prepared: Row,
    pub ops: Vec<ElementaryOp>,
    pub algebra_dim: usize,
    /// Per separator subset: `(σ(h·B), σ(h·a₁·B))`.
    pub signatures: Vec<(i64, i64)>,
}

pub fn phi_class(row: &Row, sep: &ComponentSeparator) -> Result<PointedClass, EulerError> {
    Ok(phi_class_with(row, sep, &ClassOptions::default())?.class)
}

/// `(σ(h·a₁·B) − σ(h·B))/2` for each separator product `h`, solved over the sign table.
pub fn phi_class_with(row: &Row, sep: &ComponentSeparator, opts: &ClassOptions) -> Result<ClassComputation, EulerError> {
    let ring = row.ring();
    if ring.dim() < 2 {
        return Err(EulerError::Precondition("class computation needs dimension at least 2".into()));
    }
    let prepared = prep_regular_with(row, opts.seed, opts.order, &opts.config)?;
    let lf = local_form_with(ring, &prepared.row.entries()[1..], opts.order, &opts.config)?;
    let a1 = prepared.row.entries()[0].clone();
    let (class, signatures) = solve_components(&lf, &a1, sep)?;
    Ok(ClassComputation {
        class: PointedClass { components: sep.labels.clone(), class, convention: CONVENTION },
        prepared: prepared.row,
        ops: prepared.ops,
        algebra_dim: lf.dim(),
        signatures,
    })
}

fn solve_components(lf: &LocalForm, a1: &Poly, sep: &ComponentSeparator) -> Result<(Vec<i64>, Vec<(i64, i64)>), EulerError> {
    let nv = a1.nvars();
    let k = sep.separators.len();
    let comps = sep.labels.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut sigs = Vec::new();
    for mask in 0u32..(1 << k) {
        let mut h = Poly::one(nv);
        let mut coeffs = vec![Rational::one(); comps];
        for s in 0..k {
            if mask & (1 << s) != 0 {
                h = &h * &sep.separators[s];
                for (c, coef) in coeffs.iter_mut().enumerate() {
                    if sep.signs[c][s] < 0 {
                        *coef = -coef.clone();
                    }
                }
            }
        }
        let plain = lf.weighted_signature(&h)?;
        let twisted = lf.weighted_signature(&(&h * a1))?;
        let diff = twisted - plain;
        if diff.is_odd() {
            return Err(EulerError::Parity { plain, twisted });
        }
        sigs.push((plain, twisted));
        rows.push(coeffs);
        rhs.push(Rational::from_integer((diff / 2).into()));
    }
    let a = Matrix::from_rows(rows);
    if a.rank() < comps {
        return Err(EulerError::Separator("sign table does not determine the components".into()));
    }
    let at = a.transpose();
    let normal = at.mul(&a)?;
    let solution = normal
        .solve(&at.mul_vec(&rhs))
        .expect("normal equations of a full-rank system are solvable");
    if a.mul_vec(&solution) != rhs {
        return Err(EulerError::Separator("signature data is inconsistent with the sign table".into()));
    }
    let class = solution
        .iter()
        .map(|v| {
            if !v.is_integer() {
                return Err(EulerError::Separator(format!("non-integral component class {v}")));
            }
            i64::try_from(v.to_integer()).map_err(|_| EulerError::Separator("class out of range".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((class, sigs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdditivityReport {
    pub x: PointedClass,
    pub one_minus_x: PointedClass,
    pub product: PointedClass,
    pub holds: bool,
}

pub fn phi_additivity_check(inst: &WmsInstance, sep: &ComponentSeparator) -> Result<AdditivityReport, EulerError> {
    let x = phi_class(&inst.row_x, sep)?;
    let one_minus_x = phi_class(&inst.row_one_minus_x, sep)?;
    let product = phi_class(&inst.row_product, sep)?;
    let holds = x.add(&one_minus_x) == product;
    Ok(AdditivityReport { x, one_minus_x, product, holds })
}

use serde_json::json;

use super::{GerstenError, TwistTag};
use crate::qform::{form_tensor, residue_second, BaseField, DiagonalForm, FieldElem};
use crate::ring::upoly::{Place, RatFunc, UPoly};

/// Coordinate on the line `V(x₂, …, x_{n+1})`.
pub const LINE_VAR: &str = "x1";

fn line_field() -> BaseField {
    BaseField::Functions(LINE_VAR.into())
}

/// A point of `G¹(ℚ(x₁))` on the coordinate line, twisted by a Koszul generator of the normal bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToyCycle {
    pub n: usize,
    pub unit: RatFunc,
    pub form: DiagonalForm,
    pub twist: TwistTag,
}

impl ToyCycle {
    pub fn new(n: usize, unit: RatFunc, form: DiagonalForm, twist: TwistTag) -> Result<Self, GerstenError> {
        if n < 1 {
            return Err(GerstenError::BadDimension(n as i64));
        }
        if *form.base() != line_field() {
            return Err(GerstenError::Support(format!("form lives over {}", form.base().name())));
        }
        if twist.indices != (2..=n + 1).collect::<Vec<_>>() {
            return Err(GerstenError::Support(format!("twist {twist} is not Kos(x2..x{})", n + 1)));
        }
        let c = ToyCycle { n, unit, form, twist };
        c.check_compatible()?;
        Ok(c)
    }

    /// The form lies in `I` and its signed discriminant agrees with the unit modulo squares.
    pub fn check_compatible(&self) -> Result<(), GerstenError> {
        if self.unit.is_zero() {
            return Err(GerstenError::Incompatible("unit is zero".into()));
        }
        if self.form.dim() % 2 == 1 {
            return Err(GerstenError::Incompatible("form has odd rank".into()));
        }
        let disc = self.form.signed_discriminant();
        let FieldElem::Fun(d) = disc else { unreachable!("function field form") };
        if !(&d * &self.unit).is_square() {
            return Err(GerstenError::Incompatible(format!(
                "discriminant {} and unit {} differ modulo squares",
                d.show(LINE_VAR),
                self.unit.show(LINE_VAR)
            )));
        }
        Ok(())
    }

    /// `(u, ⟨−1, u⟩)`.
    pub fn from_unit(n: usize, unit: RatFunc) -> Result<Self, GerstenError> {
        let form = DiagonalForm::new(line_field(), vec![FieldElem::Fun(RatFunc::from_int(-1)), FieldElem::Fun(unit.clone())])?;
        ToyCycle::new(n, unit, form, TwistTag::koszul(2..=n + 1))
    }

    /// Action of a scalar form with rational entries: `⟨α⟩·(u, φ) = (u^{rank}, ⟨α⟩φ)`.
    pub fn scale(&self, scalar: &DiagonalForm) -> Result<Self, GerstenError> {
        let lifted: Vec<FieldElem> = scalar
            .entries()
            .iter()
            .map(|e| FieldElem::Fun(RatFunc::constant(e.as_rational().expect("rational scalar").clone())))
            .collect();
        let lifted = DiagonalForm::new(line_field(), lifted)?;
        let unit = self.unit.powi(scalar.dim() as u32);
        ToyCycle::new(self.n, unit, form_tensor(&lifted, &self.form)?, self.twist.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "support": format!("V({})", (2..=self.n + 1).map(|i| format!("x{i}")).collect::<Vec<_>>().join(",")),
            "unit": self.unit.show(LINE_VAR),
            "form": self.form.to_json().entries,
            "twist": self.twist.to_string(),
        })
    }
}

/// `ξ = (x₁, ⟨−1, x₁⟩) ⊗ Kos(x₂, …, x_{n+1})`.
pub fn xi_cycle(n: i64) -> Result<ToyCycle, GerstenError> {
    if n < 1 {
        return Err(GerstenError::BadDimension(n));
    }
    ToyCycle::from_unit(n as usize, RatFunc::from_poly(UPoly::x()))
}

/// A degree-0 value at the origin: `(v, φ) ∈ ℤ ×_{ℤ/2} W(ℚ)` with its twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryValue {
    pub milnor: i64,
    pub witt: DiagonalForm,
    pub twist: TwistTag,
}

/// Drops pairs `⟨a, b⟩` with `−ab` a square; what remains represents the same Witt class.
fn cancel_rational(f: &DiagonalForm) -> DiagonalForm {
    let base = f.base().clone();
    let mut e: Vec<FieldElem> = f.entries().to_vec();
    'outer: loop {
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if base.is_square(&base.neg(&base.mul(&e[i], &e[j]))) {
                    e.remove(j);
                    e.remove(i);
                    continue 'outer;
                }
            }
        }
        break;
    }
    DiagonalForm::new(base, e).expect("nonzero entries")
}

impl BoundaryValue {
    pub fn is_compatible(&self) -> bool {
        self.milnor.rem_euclid(2) as usize == self.witt.dim() % 2
    }

    pub fn reduced_witt(&self) -> DiagonalForm {
        cancel_rational(&self.witt)
    }

    /// `(±1, ⟨u⟩)`: a unit of `GW(ℚ)`, hence a module generator.
    pub fn is_unit_generator(&self) -> bool {
        self.milnor.abs() == 1 && self.reduced_witt().dim() == 1
    }

    pub fn is_zero(&self) -> bool {
        self.milnor == 0 && self.reduced_witt().dim() == 0
    }

    pub fn signature(&self) -> i64 {
        self.witt.signature().expect("rational form")
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "degree": 0,
            "milnor": self.milnor,
            "witt": self.witt.to_json().entries,
            "witt_reduced": self.reduced_witt().to_json().entries,
            "twist": self.twist.to_string(),
            "generator": self.is_unit_generator(),
            "compatible": self.is_compatible(),
        })
    }
}

/// Residue at `x₁ = 0`: valuation on the unit, second residue on the form, `x₁ ∧` on the twist.
pub fn boundary_at_origin(c: &ToyCycle) -> Result<BoundaryValue, GerstenError> {
    let place = Place::finite(&UPoly::x()).expect("x1 is a place");
    let witt = residue_second(&c.form, &place)?;
    let twist = TwistTag::koszul(1..=1)
        .wedge(&c.twist)
        .ok_or_else(|| GerstenError::Support("twist already contains x1".into()))?;
    let value = BoundaryValue { milnor: c.unit.valuation(&place), witt, twist };
    debug_assert!(value.is_compatible());
    Ok(value)
}

use serde::{Deserialize, Serialize};

use super::field::{BaseField, FieldElem};
use super::QformError;

/// A diagonal form `⟨a₁, …, a_n⟩` with nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    base: BaseField,
    entries: Vec<FieldElem>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormJson {
    pub base: BaseField,
    pub entries: Vec<String>,
}

impl DiagonalForm {
    pub fn new(base: BaseField, entries: Vec<FieldElem>) -> Result<Self, QformError> {
        for e in &entries {
            base.check(e)?;
            if base.is_zero(e) {
                return Err(QformError::ZeroEntry);
            }
        }
        Ok(DiagonalForm { base, entries })
    }

    pub fn zero(base: BaseField) -> Self {
        DiagonalForm { base, entries: Vec::new() }
    }

    pub fn from_ints(base: BaseField, entries: &[i64]) -> Result<Self, QformError> {
        let es = entries.iter().map(|&n| base.from_int(n)).collect();
        Self::new(base, es)
    }

    pub fn parse(base: BaseField, entries: &[&str]) -> Result<Self, QformError> {
        let es = entries.iter().map(|s| base.parse_elem(s)).collect::<Result<_, _>>()?;
        Self::new(base, es)
    }

    pub fn from_json(json: &FormJson) -> Result<Self, QformError> {
        let es = json.entries.iter().map(|s| json.base.parse_elem(s)).collect::<Result<_, _>>()?;
        Self::new(json.base.clone(), es)
    }

    pub fn to_json(&self) -> FormJson {
        FormJson { base: self.base.clone(), entries: self.entries.iter().map(|e| self.base.show(e)).collect() }
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `(−1)^{n(n−1)/2} · a₁⋯a_n`
    pub fn signed_discriminant(&self) -> FieldElem {
        let n = self.dim();
        let det = self.entries.iter().fold(self.base.one(), |acc, e| self.base.mul(&acc, e));
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            self.base.neg(&det)
        } else {
            det
        }
    }

    /// Signature for forms whose entries have a sign (`Reals`, `Rationals`).
    pub fn signature(&self) -> Option<i64> {
        if !matches!(self.base, BaseField::Reals | BaseField::Rationals) {
            return None;
        }
        Some(self.entries.iter().map(|e| self.base.sign(e).map_or(0, i64::from)).sum())
    }

    pub fn show(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|e| self.base.show(e)).collect();
        format!("<{}>", parts.join(","))
    }
}

pub fn form_sum(f: &DiagonalForm, g: &DiagonalForm) -> Result<DiagonalForm, QformError> {
    if f.base != g.base {
        return Err(QformError::BaseMismatch);
    }
    let mut entries = f.entries.clone();
    entries.extend(g.entries.iter().cloned());
    Ok(DiagonalForm { base: f.base.clone(), entries })
}

pub fn form_tensor(f: &DiagonalForm, g: &DiagonalForm) -> Result<DiagonalForm, QformError> {
    if f.base != g.base {
        return Err(QformError::BaseMismatch);
    }
    let b = &f.base;
    let entries = f.entries.iter().flat_map(|a| g.entries.iter().map(move |c| b.mul(a, c))).collect();
    Ok(DiagonalForm { base: b.clone(), entries })
}

pub fn form_scale(f: &DiagonalForm, alpha: &FieldElem) -> Result<DiagonalForm, QformError> {
    f.base.check(alpha)?;
    if f.base.is_zero(alpha) {
        return Err(QformError::ZeroEntry);
    }
    Ok(DiagonalForm { base: f.base.clone(), entries: f.entries.iter().map(|e| f.base.mul(e, alpha)).collect() })
}

/// `−f`
pub fn form_negate(f: &DiagonalForm) -> DiagonalForm {
    form_scale(f, &f.base.from_int(-1)).expect("−1 is a unit")
}

/// `⟨⟨a₁,…,a_n⟩⟩ = ⊗ ⟨1, −aᵢ⟩`
pub fn pfister(base: &BaseField, slots: &[FieldElem]) -> Result<DiagonalForm, QformError> {
    let mut out = DiagonalForm::new(base.clone(), vec![base.one()])?;
    for a in slots {
        base.check(a)?;
        if base.is_zero(a) {
            return Err(QformError::ZeroEntry);
        }
        let binary = DiagonalForm { base: base.clone(), entries: vec![base.one(), base.neg(a)] };
        out = form_tensor(&out, &binary)?;
    }
    Ok(out)
}

/// A Witt class over `Reals`, `Complex` or `𝔽_p`, stored by its complete invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittClass {
    base: BaseField,
    dim_parity: u8,
    disc_square: bool,
    signature: Option<i64>,
    representative: DiagonalForm,
}

impl WittClass {
    pub fn zero(base: &BaseField) -> Result<Self, QformError> {
        Ok(witt_decompose(&DiagonalForm::zero(base.clone()))?.0)
    }

    pub fn of(f: &DiagonalForm) -> Result<Self, QformError> {
        Ok(witt_decompose(f)?.0)
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn dim_parity(&self) -> u8 {
        self.dim_parity
    }

    /// Whether the signed discriminant is a square.
    pub fn disc_is_square(&self) -> bool {
        self.disc_square
    }

    pub fn signature(&self) -> Option<i64> {
        self.signature
    }

    /// The canonical anisotropic representative.
    pub fn representative(&self) -> &DiagonalForm {
        &self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.representative.dim() == 0
    }

    pub fn add(&self, other: &WittClass) -> Result<WittClass, QformError> {
        WittClass::of(&form_sum(&self.representative, &other.representative)?)
    }

    pub fn sub(&self, other: &WittClass) -> Result<WittClass, QformError> {
        WittClass::of(&form_sum(&self.representative, &form_negate(&other.representative))?)
    }

    pub fn mul(&self, other: &WittClass) -> Result<WittClass, QformError> {
        WittClass::of(&form_tensor(&self.representative, &other.representative)?)
    }

    pub fn neg(&self) -> WittClass {
        WittClass::of(&form_negate(&self.representative)).expect("same base")
    }

    /// `k · self` for an integer `k`.
    pub fn times(&self, k: i64) -> WittClass {
        let mut acc = WittClass::zero(&self.base).expect("decidable base");
        let unit = if k >= 0 { self.clone() } else { self.neg() };
        for _ in 0..k.unsigned_abs() {
            acc = acc.add(&unit).expect("same base");
        }
        acc
    }
}

/// Anisotropic part and number of split hyperbolic planes.
pub fn witt_decompose(f: &DiagonalForm) -> Result<(WittClass, usize), QformError> {
    let base = f.base.clone();
    let n = f.dim();
    let (signature, rep) = match &base {
        BaseField::Reals => {
            let s = f.signature().expect("real form");
            let unit = if s >= 0 { 1 } else { -1 };
            let rep = DiagonalForm::from_ints(base.clone(), &vec![unit; s.unsigned_abs() as usize])?;
            (Some(s), rep)
        }
        BaseField::Complex => (None, DiagonalForm::from_ints(base.clone(), &vec![1; n % 2])?),
        BaseField::Fp(_) => {
            let sq = base.is_square(&f.signed_discriminant());
            let g = base.least_nonsquare().expect("odd prime") as i64;
            let rep = match (n % 2, sq) {
                (1, true) => vec![1],
                (1, false) => vec![g],
                (_, true) => vec![],
                (_, false) => vec![1, -g],
            };
            (None, DiagonalForm::from_ints(base.clone(), &rep)?)
        }
        other => return Err(QformError::UnsupportedBase(other.name())),
    };
    let hyperbolic = (n - rep.dim()) / 2;
    let class = WittClass {
        dim_parity: (n % 2) as u8,
        disc_square: base.is_square(&rep.signed_discriminant()),
        signature,
        representative: rep,
        base,
    };
    Ok((class, hyperbolic))
}

/// Membership of a Witt class in the `n`-th power of the fundamental ideal.
pub fn in_fundamental_power(w: &WittClass, n: u32) -> Result<bool, QformError> {
    if n == 0 {
        return Ok(true);
    }
    match w.base {
        BaseField::Reals => {
            let s = w.signature.expect("real class");
            Ok(n < 63 && s % (1i64 << n) == 0)
        }
        BaseField::Complex => Ok(w.is_zero()),
        BaseField::Fp(_) => Ok(if n == 1 { w.dim_parity == 0 } else { w.is_zero() }),
        ref other => Err(QformError::UnsupportedBase(other.name())),
    }
}

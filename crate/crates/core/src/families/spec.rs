use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{FieldCtx, FieldElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: FieldElement,
    pub exponent: u64,
}

/// How the terms combine into a function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `f(x) = sum c_i x^e_i`.
    Sum,
    /// `f(x) = x^prefactor * (sum c_i x^e_i)^power`.
    ScaledPower { prefactor: u64, power: u64 },
}

/// A concrete polynomial function on a field, given by its terms.
///
/// Exponents are normalized into `[1, q^n - 1]` by `e -> ((e-1) mod (q^n-1)) + 1`,
/// which keeps the induced function on nonzero arguments and sends `0` to `0`.
/// A formal exponent `0` therefore becomes `q^n - 1`: the term is read as the
/// function `x -> x^0` on `x != 0` with value `0` at `x = 0`. Terms whose
/// exponents coincide after normalization are merged and zero coefficients
/// dropped; `collapsed` records that this happened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrinomialSpec {
    field: FieldCtx,
    terms: Vec<Term>,
    shape: Shape,
    collapsed: bool,
}

/// `((e - 1) mod (order - 1)) + 1`.
pub fn normalize_exponent(e: i128, order: u64) -> u64 {
    let group = order as i128 - 1;
    ((e - 1).rem_euclid(group) + 1) as u64
}

fn merge_terms(field: &FieldCtx, raw: &[(FieldElement, i128)]) -> Result<(Vec<Term>, bool)> {
    let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
    for &(c, e) in raw {
        let exponent = normalize_exponent(e, field.order());
        match terms.iter_mut().find(|t| t.exponent == exponent) {
            Some(t) => t.coeff = field.add(t.coeff, c)?,
            None => terms.push(Term {
                coeff: field.add(field.zero(), c)?,
                exponent,
            }),
        }
    }
    terms.retain(|t| !t.coeff.is_zero());
    terms.sort_by_key(|t| t.exponent);
    let nonzero_inputs = raw.iter().filter(|(c, _)| !c.is_zero()).count();
    let collapsed = terms.len() < nonzero_inputs;
    Ok((terms, collapsed))
}

impl TrinomialSpec {
    /// `sum c_i x^e_i` from raw (coefficient, exponent) pairs.
    pub fn new(field: &FieldCtx, raw: &[(FieldElement, i128)]) -> Result<Self> {
        let (terms, collapsed) = merge_terms(field, raw)?;
        Ok(TrinomialSpec {
            field: field.clone(),
            terms,
            shape: Shape::Sum,
            collapsed,
        })
    }

    /// Unit-coefficient polynomial with the given exponents.
    pub fn from_exponents(field: &FieldCtx, exponents: &[i128]) -> Result<Self> {
        let raw: Vec<_> = exponents.iter().map(|&e| (field.one(), e)).collect();
        Self::new(field, &raw)
    }

    /// `x^prefactor * (sum c_i x^e_i)^power`.
    pub fn scaled_power(field: &FieldCtx, prefactor: i128, power: i128, raw: &[(FieldElement, i128)]) -> Result<Self> {
        let (terms, collapsed) = merge_terms(field, raw)?;
        Ok(TrinomialSpec {
            field: field.clone(),
            terms,
            shape: Shape::ScaledPower {
                prefactor: normalize_exponent(prefactor, field.order()),
                power: normalize_exponent(power, field.order()),
            },
            collapsed,
        })
    }

    pub fn identity(field: &FieldCtx) -> Self {
        Self::from_exponents(field, &[1]).expect("identity is valid")
    }

    pub fn monomial(field: &FieldCtx, e: i128) -> Self {
        Self::from_exponents(field, &[e]).expect("monomial is valid")
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn collapsed(&self) -> bool {
        self.collapsed
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.exponent).collect()
    }

    /// All coefficients equal to one.
    pub fn has_unit_coefficients(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.value() == 1)
    }

    /// Every catalog spec sends 0 to 0: all normalized exponents are positive.
    pub fn zero_maps_to_zero(&self) -> bool {
        true
    }

    pub fn eval(&self, x: FieldElement) -> Result<FieldElement> {
        let v = self.field.element(x.value())?;
        if v != x {
            return Err(Error::FieldMismatch);
        }
        Ok(self.field.wrap(self.eval_raw(x.value())))
    }

    #[inline]
    fn sum_raw(&self, x: u64) -> u64 {
        let f = &self.field;
        self.terms.iter().fold(0u64, |acc, t| {
            let mono = f.pow_raw(x, t.exponent);
            let term = if t.coeff.value() == 1 { mono } else { f.mul_raw(t.coeff.value(), mono) };
            f.add_raw(acc, term)
        })
    }

    #[inline]
    pub(crate) fn eval_raw(&self, x: u64) -> u64 {
        match self.shape {
            Shape::Sum => self.sum_raw(x),
            Shape::ScaledPower { prefactor, power } => {
                let f = &self.field;
                let inner = f.pow_raw(self.sum_raw(x), power);
                f.mul_raw(f.pow_raw(x, prefactor), inner)
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SpecJson::from(self)).expect("spec serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: SpecJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let field = FieldCtx::from_descriptor(&j.field)?;
        let raw = j
            .terms
            .iter()
            .map(|(c, e)| Ok((field.parse_element(c)?, *e as i128)))
            .collect::<Result<Vec<_>>>()?;
        match (j.prefactor, j.power) {
            (None, None) => Self::new(&field, &raw),
            (Some(pre), Some(pow)) => Self::scaled_power(&field, pre as i128, pow as i128, &raw),
            _ => Err(Error::Parse("prefactor and power must appear together".into())),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    field: String,
    terms: Vec<(String, u64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prefactor: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    power: Option<u64>,
}

impl From<&TrinomialSpec> for SpecJson {
    fn from(s: &TrinomialSpec) -> Self {
        let (prefactor, power) = match s.shape {
            Shape::Sum => (None, None),
            Shape::ScaledPower { prefactor, power } => (Some(prefactor), Some(power)),
        };
        SpecJson {
            field: s.field.descriptor(),
            terms: s
                .terms
                .iter()
                .map(|t| (s.field.format_element(t.coeff), t.exponent))
                .collect(),
            prefactor,
            power,
        }
    }
}

impl Serialize for TrinomialSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SpecJson::from(self).serialize(serializer)
    }
}

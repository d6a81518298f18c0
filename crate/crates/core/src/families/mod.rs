//! The catalog of permutation trinomial families.
//!
//! Each [`FamilyId`] has an exponent formula, structural preconditions that
//! make the formula well defined, and an applicability predicate saying when
//! the family is claimed to permute. [`instantiate`] turns a
//! [`FamilyInstance`] into a concrete [`TrinomialSpec`] over a given field.

mod claim1;
mod parse;
mod spec;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{prime_power, FieldCtx, FieldElement};

pub use claim1::{claim1_check, Claim1Outcome};
pub use spec::{normalize_exponent, Shape, Term, TrinomialSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyId {
    K2,
    K3,
    K4,
    K5,
    K6,
    T21,
    T22,
    T23,
    T24,
    T32,
    T33,
    C34,
    C35,
    C36,
    C37,
}

impl FamilyId {
    /// Catalog order: known families first.
    pub const ALL: [FamilyId; 15] = [
        FamilyId::K2,
        FamilyId::K3,
        FamilyId::K4,
        FamilyId::K5,
        FamilyId::K6,
        FamilyId::T21,
        FamilyId::T22,
        FamilyId::T23,
        FamilyId::T24,
        FamilyId::T32,
        FamilyId::T33,
        FamilyId::C34,
        FamilyId::C35,
        FamilyId::C36,
        FamilyId::C37,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FamilyId::K2 => "K2",
            FamilyId::K3 => "K3",
            FamilyId::K4 => "K4",
            FamilyId::K5 => "K5",
            FamilyId::K6 => "K6",
            FamilyId::T21 => "T21",
            FamilyId::T22 => "T22",
            FamilyId::T23 => "T23",
            FamilyId::T24 => "T24",
            FamilyId::T32 => "T32",
            FamilyId::T33 => "T33",
            FamilyId::C34 => "C34",
            FamilyId::C35 => "C35",
            FamilyId::C36 => "C36",
            FamilyId::C37 => "C37",
        }
    }

    pub fn from_tag(tag: &str) -> Option<FamilyId> {
        FamilyId::ALL.into_iter().find(|f| f.tag().eq_ignore_ascii_case(tag))
    }

    /// The family whose members this family inverts, and vice versa.
    pub fn inverse_partner(self) -> Option<FamilyId> {
        match self {
            FamilyId::C34 => Some(FamilyId::C35),
            FamilyId::C35 => Some(FamilyId::C34),
            FamilyId::C36 => Some(FamilyId::C37),
            FamilyId::C37 => Some(FamilyId::C36),
            _ => None,
        }
    }

    /// Unit-coefficient trinomial families (candidates when classifying search output).
    pub fn is_unit_trinomial(self) -> bool {
        !matches!(self, FamilyId::K5 | FamilyId::C35 | FamilyId::C37)
    }

    /// Readings an instance may choose from; empty when the formula is unambiguous.
    pub fn candidate_readings(self) -> Vec<Reading> {
        match self {
            FamilyId::C35 => Reading::all_roundings(3),
            FamilyId::C37 => Reading::all_roundings(2),
            FamilyId::K5 => vec![Reading::LeadingPlusOne, Reading::LeadingLiteral],
            _ => Vec::new(),
        }
    }

    /// The reading frozen into the catalog, selected by exhaustive checks.
    pub fn default_reading(self) -> Option<Reading> {
        use Rounding::{Down, Up};
        match self {
            FamilyId::C35 => Some(Reading::HalfExponents(vec![Up, Down, Down])),
            FamilyId::C37 => Some(Reading::HalfExponents(vec![Down, Down])),
            FamilyId::K5 => Some(Reading::LeadingPlusOne),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Rounding of a half-integer exponent such as `(m+1)/2` when `m` is even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rounding {
    Down,
    Up,
}

/// Resolution of a formula that is not literally well defined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Reading {
    /// One rounding per distinct half-integer exponent `(m+1)/2, (m+3)/2, ...`
    /// in order of appearance; written as a string of `f` (floor) and `c` (ceiling).
    HalfExponents(Vec<Rounding>),
    /// K5 with leading term `x^(2^(2k))` exactly as printed.
    LeadingLiteral,
    /// K5 with leading term `x^(2^(2k)+1)`.
    LeadingPlusOne,
}

impl Reading {
    pub fn all_roundings(count: usize) -> Vec<Reading> {
        (0..1u32 << count)
            .map(|mask| {
                Reading::HalfExponents(
                    (0..count)
                        .map(|i| if mask >> (count - 1 - i) & 1 == 1 { Rounding::Up } else { Rounding::Down })
                        .collect(),
                )
            })
            .collect()
    }

    pub fn parse(s: &str) -> Result<Reading> {
        match s {
            "literal" => Ok(Reading::LeadingLiteral),
            "plus1" => Ok(Reading::LeadingPlusOne),
            _ if !s.is_empty() && s.chars().all(|c| c == 'f' || c == 'c') => Ok(Reading::HalfExponents(
                s.chars()
                    .map(|c| if c == 'c' { Rounding::Up } else { Rounding::Down })
                    .collect(),
            )),
            _ => Err(Error::Parse(format!(
                "unknown reading '{s}' (expected a string of f/c, 'literal' or 'plus1')"
            ))),
        }
    }
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reading::HalfExponents(r) => {
                for x in r {
                    f.write_str(if *x == Rounding::Up { "c" } else { "f" })?;
                }
                Ok(())
            }
            Reading::LeadingLiteral => f.write_str("literal"),
            Reading::LeadingPlusOne => f.write_str("plus1"),
        }
    }
}

impl Serialize for Reading {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A family together with its parameters, before choosing a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyInstance {
    pub family: FamilyId,
    pub m: u32,
    /// Base field order; only T33 uses anything but 2.
    pub q: u64,
    pub k: Option<u64>,
    /// Coefficient of K5 as an element index.
    pub a: Option<u64>,
    pub reading: Option<Reading>,
}

impl FamilyInstance {
    pub fn new(family: FamilyId, m: u32) -> Self {
        FamilyInstance {
            family,
            m,
            q: 2,
            k: None,
            a: None,
            reading: None,
        }
    }

    pub fn t33(q: u64, k: u64, m: u32) -> Self {
        Self::new(FamilyId::T33, m).with_q(q).with_k(k)
    }

    pub fn with_q(mut self, q: u64) -> Self {
        self.q = q;
        self
    }

    pub fn with_k(mut self, k: u64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_a(mut self, a: u64) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_reading(mut self, r: Reading) -> Self {
        self.reading = Some(r);
        self
    }

    /// Explicit reading, or the catalog default.
    pub fn effective_reading(&self) -> Option<Reading> {
        self.reading.clone().or_else(|| self.family.default_reading())
    }

    /// `(p, s)` with `q = p^s`.
    pub fn base(&self) -> Result<(u64, u32)> {
        prime_power(self.q).ok_or_else(|| Error::InvalidInstance(format!("q = {} is not a prime power", self.q)))
    }

    /// GF(q^m) with the default modulus, `q` marked as subfield.
    pub fn field(&self) -> Result<FieldCtx> {
        let (p, s) = self.base()?;
        if self.m == 0 {
            return Err(Error::InvalidInstance("m must be positive".into()));
        }
        FieldCtx::new(p, s * self.m, None)?.with_subfield(s)
    }

    /// Parameter checks that make the formula well defined.
    pub fn check_structure(&self) -> Result<()> {
        let m = self.m;
        let bad = |msg: String| Err(Error::InvalidInstance(format!("{}: {msg}", self.family)));
        if m == 0 {
            return bad("m must be positive".into());
        }
        if self.family != FamilyId::T33 && self.q != 2 {
            return bad(format!("only T33 takes q (got q = {})", self.q));
        }
        if self.family != FamilyId::T33 && self.family != FamilyId::K5 && self.k.is_some() {
            return bad("k is not a parameter of this family".into());
        }
        if self.family != FamilyId::K5 && self.a.is_some() {
            return bad("a is not a parameter of this family".into());
        }
        if let Some(r) = &self.reading {
            if !self.family.candidate_readings().contains(r) {
                return bad(format!("reading '{r}' does not apply"));
            }
        }
        match self.family {
            FamilyId::K2 | FamilyId::K3 => {}
            FamilyId::K4 | FamilyId::K6 if m.is_multiple_of(2) => return bad(format!("m must be odd, got {m}")),
            FamilyId::T21 | FamilyId::T22 if m.is_multiple_of(2) || m < 3 => {
                return bad(format!("m must be odd and > 1, got {m}"))
            }
            FamilyId::T23 | FamilyId::T24 if m.is_multiple_of(2) || m < 3 => {
                return bad(format!("m must be odd and >= 3, got {m}"))
            }
            FamilyId::T32 if !m.is_multiple_of(2) => return bad(format!("m must be even, got {m}")),
            FamilyId::T33 => {
                self.base()?;
                if !m.is_multiple_of(2) {
                    return bad(format!("m must be even, got {m}"));
                }
                match self.k {
                    Some(k) if k >= 1 => {}
                    _ => return bad("k must be a positive integer".into()),
                }
            }
            FamilyId::C34 | FamilyId::C35 | FamilyId::C36 | FamilyId::C37 if !m.is_multiple_of(4) => {
                return bad(format!("4 must divide m, got {m}"))
            }
            FamilyId::K5 => {
                let k = match self.k {
                    Some(k) if k >= 1 => k,
                    _ => return bad("k must be a positive integer".into()),
                };
                if m as u64 != 3 * k {
                    return bad(format!("m must equal 3k, got m = {m}, k = {k}"));
                }
                match self.a {
                    Some(a) if a != 0 && a < 1u64 << m => {}
                    Some(a) => return bad(format!("a = {a:#x} must be a nonzero element of GF(2^{m})")),
                    None => return bad("coefficient a is required".into()),
                }
            }
            _ => {}
        }
        Ok(())
    }
}

impl fmt::Display for FamilyInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.family)?;
        if self.family == FamilyId::T33 {
            write!(f, "q={},", self.q)?;
        }
        if let Some(k) = self.k {
            write!(f, "k={k},")?;
        }
        write!(f, "m={}", self.m)?;
        if let Some(a) = self.a {
            write!(f, ",a={a:#x}")?;
        }
        if let Some(r) = &self.reading {
            write!(f, ",reading={r}")?;
        }
        Ok(())
    }
}

/// One line of the catalog.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: FamilyId,
    pub formula: &'static str,
    pub parameters: &'static [&'static str],
    pub condition: &'static str,
    pub provenance: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reading: Option<Reading>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

/// Every family, in stable catalog order.
pub fn catalog() -> Vec<CatalogEntry> {
    FamilyId::ALL.into_iter().map(entry).collect()
}

fn entry(id: FamilyId) -> CatalogEntry {
    let (formula, parameters, condition, provenance, note): (_, &'static [&'static str], _, _, _) = match id {
        FamilyId::K2 => ("x + x^3 + x^5", &["m"], "m odd", "known: Dickson polynomial of degree 5", None),
        FamilyId::K3 => ("x + x^5 + x^7", &["m"], "m not divisible by 3", "known: Dickson polynomial of degree 7", None),
        FamilyId::K4 => (
            "x + x^3 + x^(2^((m+1)/2)+1)",
            &["m"],
            "m odd",
            "known: Dobbertin's trinomial from the Welch conjecture proof",
            None,
        ),
        FamilyId::K5 => (
            "x^(2^(2k)+1) + (a x)^(2^k+1) + a x^2",
            &["k", "m", "a"],
            "m = 3k and a^((2^m-1)/(2^k-1)) != 1",
            "known: Blokhuis, Coulter, Henderson and O'Keefe",
            Some(
                "leading exponent 2^(2k)+1 selected by exhaustive check; the literal x^(2^(2k)) \
                 reading (reading=literal) permutes for no admissible a at k = 2",
            ),
        ),
        FamilyId::K6 => (
            "x^(3*2^((m+1)/2)+4) + x^(2^((m+1)/2)+2) + x^(2^((m+1)/2))",
            &["m"],
            "m odd",
            "known: Cherowitzo; Dobbertin",
            None,
        ),
        FamilyId::T21 => (
            "x + x^(2^((m+1)/2)-1) + x^(2^m-2^((m+1)/2)+1)",
            &["m"],
            "m odd, m > 1",
            "T21: odd-m family",
            None,
        ),
        FamilyId::T22 => (
            "x^(2^((m-1)/2)-1) + x^(2^m-2^((m-1)/2)-2) + x^(2^m-2^((m-1)/2)-1)",
            &["m"],
            "m odd, m > 1",
            "T22: odd-m family, companion of T21",
            None,
        ),
        FamilyId::T23 => (
            "x + x^3 + x^(2^m-2^((m+3)/2)+2)",
            &["m"],
            "m odd, m >= 3",
            "T23: odd-m family; its proof rests on Tr(D1) = 1 (see claim1_check)",
            None,
        ),
        FamilyId::T24 => (
            "x^(2^(m-2)-1) + x^(2^(m-2)+2^((m-1)/2)-1) + x^(2^m-2^(m-2)-1)",
            &["m"],
            "m odd, m >= 3",
            "T24: odd-m family, companion of T23",
            None,
        ),
        FamilyId::T32 => (
            "x + x^(2^((m+2)/2)-1) + x^(2^m-2^(m/2)+1)",
            &["m"],
            "m even",
            "T32: even-m family, proved with the affine quadratic trace criterion",
            None,
        ),
        FamilyId::T33 => (
            "x + x^(k q^(m/2)-(k-1)) + x^((k+1)-k q^(m/2)) over GF(q^m)",
            &["q", "k", "m"],
            "q not divisible by 3, m even; permutes iff m = 0 mod 4, or q = 1 mod 3, \
             or (m = 2 mod 4, q = 2 mod 3 and exp3(k) >= exp3(q^(m/2)+1))",
            "T33: parametric even-m family, characterized by the census of y^2k + y^k ybar^k + ybar^2k = 0",
            None,
        ),
        FamilyId::C34 => (
            "x + x^(2^(m/2+1)-1) + x^(2^m-2^(m/2+1)+2)",
            &["m"],
            "4 divides m",
            "C34: T33 with q = 2, k = 2",
            None,
        ),
        FamilyId::C35 => (
            "x^(2^((m+1)/2)+3) * (x^4 + x^(2^((m+3)/2)+2) + x^(2^((m+5)/2)))^(2^m-2)",
            &["m"],
            "4 divides m",
            "C35: compositional inverse of C34",
            Some(
                "half-integer exponents rounded per position (f = floor, c = ceiling); \
                 reading cff is the one that inverts C34, uniform readings do not",
            ),
        ),
        FamilyId::C36 => (
            "x + x^(2^(m/2)) + x^(2^m-2^(m/2)+1)",
            &["m"],
            "4 divides m",
            "C36: T33 with q = 2, k = 1",
            None,
        ),
        FamilyId::C37 => (
            "x^(2^((m+1)/2)+2) * (x^2 + x^(2^((m+1)/2)+1) + x^(2^((m+3)/2)))^(2^m-2)",
            &["m"],
            "4 divides m",
            "C37: compositional inverse of C36",
            Some("half-integer exponents rounded per position; reading ff (floor) inverts C36"),
        ),
    };
    CatalogEntry {
        id,
        formula,
        parameters,
        condition,
        provenance,
        reading: id.default_reading(),
        note,
    }
}

/// Largest `e` with `3^e | i`.
pub fn exp3(i: u128) -> Result<u32> {
    if i == 0 {
        return Err(Error::InvalidArgument("exp3 needs a positive integer".into()));
    }
    let mut i = i;
    let mut e = 0;
    while i.is_multiple_of(3) {
        i /= 3;
        e += 1;
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Applicability {
    pub applicable: bool,
    pub reason: String,
}

impl Applicability {
    fn yes(reason: impl Into<String>) -> Self {
        Applicability {
            applicable: true,
            reason: reason.into(),
        }
    }

    fn no(reason: impl Into<String>) -> Self {
        Applicability {
            applicable: false,
            reason: reason.into(),
        }
    }
}

/// The permutation condition of a T33 instance, from `(m mod 4, q mod 3, exp3(k), exp3(q^(m/2)+1))`.
pub fn t33_condition(q: u64, m: u32, k: u64) -> Applicability {
    if q.is_multiple_of(3) {
        return Applicability::no(format!("q = {q} is divisible by 3, outside the family's hypothesis"));
    }
    if !m.is_multiple_of(2) {
        return Applicability::no(format!("m = {m} is odd"));
    }
    if m.is_multiple_of(4) {
        return Applicability::yes("m = 0 (mod 4)");
    }
    if q % 3 == 1 {
        return Applicability::yes(format!("q = {q} = 1 (mod 3)"));
    }
    let half = (q as u128).pow(m / 2) + 1;
    let (ek, eh) = (exp3(k as u128).unwrap_or(0), exp3(half).expect("positive"));
    if ek >= eh {
        Applicability::yes(format!("m = 2 (mod 4), q = 2 (mod 3), exp3(k) = {ek} >= exp3(q^(m/2)+1) = {eh}"))
    } else {
        Applicability::no(format!("m = 2 (mod 4), q = 2 (mod 3), exp3(k) = {ek} < exp3(q^(m/2)+1) = {eh}"))
    }
}

/// Whether the instance is claimed to be a permutation, evaluated over the
/// default field (K5's coefficient condition depends on the field).
pub fn applicability(inst: &FamilyInstance) -> Applicability {
    match inst.field() {
        Ok(field) => applicability_in(inst, &field),
        Err(e) => Applicability::no(e.to_string()),
    }
}

/// [`applicability`] with K5's coefficient interpreted in `field`.
pub fn applicability_in(inst: &FamilyInstance, field: &FieldCtx) -> Applicability {
    if let Err(e) = inst.check_structure() {
        return Applicability::no(e.to_string());
    }
    let m = inst.m;
    match inst.family {
        FamilyId::K2 if m.is_multiple_of(2) => Applicability::no(format!("m = {m} is even")),
        FamilyId::K2 => Applicability::yes("m odd"),
        FamilyId::K3 if m.is_multiple_of(3) => Applicability::no(format!("m = {m} is divisible by 3")),
        FamilyId::K3 => Applicability::yes("m not divisible by 3"),
        FamilyId::K5 => {
            let k = inst.k.expect("checked");
            let a = match field.element(inst.a.expect("checked")) {
                Ok(a) => a,
                Err(e) => return Applicability::no(e.to_string()),
            };
            if inst.effective_reading() == Some(Reading::LeadingLiteral) {
                return Applicability::no("literal leading exponent 2^(2k) is not a permutation family");
            }
            let e = ((1u128 << m) - 1) / ((1u128 << k) - 1);
            let v = field.pow(a, e as i128).expect("a is nonzero");
            if v == field.one() {
                Applicability::no(format!("a^((2^m-1)/(2^k-1)) = 1 for a = {a:#x}"))
            } else {
                Applicability::yes(format!("a^((2^m-1)/(2^k-1)) != 1 for a = {a:#x}"))
            }
        }
        FamilyId::T33 => t33_condition(inst.q, m, inst.k.expect("checked")),
        FamilyId::C35 | FamilyId::C37 => {
            if inst.effective_reading() == inst.family.default_reading() {
                Applicability::yes("4 divides m")
            } else {
                Applicability::no("only the catalog reading is claimed to permute")
            }
        }
        _ => Applicability::yes(entry(inst.family).condition),
    }
}

fn pow2(e: u32) -> i128 {
    1i128 << e
}

/// Integer exponent for the half-integer `(m + 1 + 2 i) / 2` under a rounding.
fn half_exponent(m: u32, i: u32, r: Rounding) -> u32 {
    m / 2 + i + u32::from(r == Rounding::Up)
}

/// Concrete polynomial of `inst` over `field`, whose order must be `q^m`.
pub fn instantiate(inst: &FamilyInstance, field: &FieldCtx) -> Result<TrinomialSpec> {
    inst.check_structure()?;
    let (p, _) = inst.base()?;
    let expected = (inst.q as u128).checked_pow(inst.m);
    if field.characteristic() != p || expected != Some(field.order() as u128) {
        return Err(Error::InvalidInstance(format!(
            "{inst} needs GF({}^{}), got {}",
            inst.q,
            inst.m,
            field.descriptor()
        )));
    }
    let m = inst.m;
    let n = pow2(m);
    let one = field.one();
    let units = |es: &[i128]| TrinomialSpec::from_exponents(field, es);
    match inst.family {
        FamilyId::K2 => units(&[1, 3, 5]),
        FamilyId::K3 => units(&[1, 5, 7]),
        FamilyId::K4 => units(&[1, 3, pow2(m.div_ceil(2)) + 1]),
        FamilyId::K5 => {
            let k = inst.k.expect("checked") as u32;
            let a = field.element(inst.a.expect("checked"))?;
            let lead = match inst.effective_reading() {
                Some(Reading::LeadingLiteral) => pow2(2 * k),
                _ => pow2(2 * k) + 1,
            };
            let mid = pow2(k) + 1;
            let a_mid: FieldElement = field.pow(a, mid)?;
            TrinomialSpec::new(field, &[(one, lead), (a_mid, mid), (a, 2)])
        }
        FamilyId::K6 => {
            let t = pow2(m.div_ceil(2));
            units(&[3 * t + 4, t + 2, t])
        }
        FamilyId::T21 => {
            let t = pow2(m.div_ceil(2));
            units(&[1, t - 1, n - t + 1])
        }
        FamilyId::T22 => {
            let t = pow2((m - 1) / 2);
            units(&[t - 1, n - t - 2, n - t - 1])
        }
        FamilyId::T23 => units(&[1, 3, n - pow2((m + 3) / 2) + 2]),
        FamilyId::T24 => {
            let t = pow2(m - 2);
            units(&[t - 1, t + pow2((m - 1) / 2) - 1, n - t - 1])
        }
        FamilyId::T32 => units(&[1, pow2((m + 2) / 2) - 1, n - pow2(m / 2) + 1]),
        FamilyId::T33 => {
            let k = inst.k.expect("checked") as i128;
            let r = (inst.q as i128).pow(m / 2);
            units(&[1, k * r - (k - 1), (k + 1) - k * r])
        }
        FamilyId::C34 => units(&[1, pow2(m / 2 + 1) - 1, n - pow2(m / 2 + 1) + 2]),
        FamilyId::C36 => units(&[1, pow2(m / 2), n - pow2(m / 2) + 1]),
        FamilyId::C35 | FamilyId::C37 => {
            let rounding = match inst.effective_reading() {
                Some(Reading::HalfExponents(r)) => r,
                _ => unreachable!("inverse families always carry a rounding"),
            };
            let h = |i: usize| pow2(half_exponent(m, i as u32, rounding[i]));
            if inst.family == FamilyId::C35 {
                TrinomialSpec::scaled_power(field, h(0) + 3, n - 2, &[(one, 4), (one, h(1) + 2), (one, h(2))])
            } else {
                TrinomialSpec::scaled_power(field, h(0) + 2, n - 2, &[(one, 2), (one, h(0) + 1), (one, h(1))])
            }
        }
    }
}

/// Instantiates over the instance's default field.
pub fn instantiate_default(inst: &FamilyInstance) -> Result<TrinomialSpec> {
    instantiate(inst, &inst.field()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exps(inst: FamilyInstance) -> Vec<u64> {
        instantiate_default(&inst).unwrap().exponents()
    }

    #[test]
    fn catalog_shape() {
        let c = catalog();
        assert_eq!(c.len(), 15);
        assert_eq!(c[0].id, FamilyId::K2);
        assert_eq!(c[0].formula, "x + x^3 + x^5");
        assert_eq!(c[0].condition, "m odd");
        let t33 = c.iter().find(|e| e.id == FamilyId::T33).unwrap();
        assert_eq!(t33.parameters, &["q", "k", "m"]);
        for (e, id) in c.iter().zip(FamilyId::ALL) {
            assert_eq!(e.id, id);
            assert_eq!(FamilyId::from_tag(id.tag()), Some(id));
        }
    }

    #[test]
    fn worked_exponents() {
        assert_eq!(exps(FamilyInstance::new(FamilyId::T21, 3)), vec![1, 3, 5]);
        assert_eq!(exps(FamilyInstance::new(FamilyId::K2, 3)), vec![1, 3, 5]);
        assert_eq!(exps(FamilyInstance::t33(2, 2, 4)), vec![1, 7, 10]);
        assert_eq!(exps(FamilyInstance::new(FamilyId::C34, 4)), vec![1, 7, 10]);
        assert_eq!(exps(FamilyInstance::new(FamilyId::T23, 5)), vec![1, 3, 18]);
        // formal exponent 0 read as q^m - 1
        assert_eq!(exps(FamilyInstance::t33(2, 1, 2)), vec![1, 2, 3]);
    }

    #[test]
    fn t32_collapses_at_m2() {
        let spec = instantiate_default(&FamilyInstance::new(FamilyId::T32, 2)).unwrap();
        assert!(spec.collapsed());
        assert_eq!(spec.exponents(), vec![1]);
    }

    #[test]
    fn exp3_values() {
        assert_eq!(exp3(9).unwrap(), 2);
        assert_eq!(exp3(12).unwrap(), 1);
        assert_eq!(exp3(5).unwrap(), 0);
        assert!(exp3(0).is_err());
    }

    #[test]
    fn t33_predicate_examples() {
        assert!(!applicability(&FamilyInstance::t33(2, 1, 2)).applicable);
        assert!(applicability(&FamilyInstance::t33(4, 1, 2)).applicable);
        assert!(applicability(&FamilyInstance::t33(2, 3, 2)).applicable);
        assert!(applicability(&FamilyInstance::t33(2, 1, 4)).applicable);
        assert!(!applicability(&FamilyInstance::t33(3, 1, 4)).applicable);
        assert!(!applicability(&FamilyInstance::new(FamilyId::T21, 4)).applicable);
    }

    #[test]
    fn t33_specializes_to_corollaries() {
        for m in [4u32, 8, 12, 16] {
            let field = FieldCtx::binary(m).unwrap();
            let t = |k| instantiate(&FamilyInstance::t33(2, k, m), &field).unwrap();
            let c34 = instantiate(&FamilyInstance::new(FamilyId::C34, m), &field).unwrap();
            let c36 = instantiate(&FamilyInstance::new(FamilyId::C36, m), &field).unwrap();
            assert_eq!(t(2).terms(), c34.terms());
            assert_eq!(t(1).terms(), c36.terms());
        }
    }

    #[test]
    fn structural_errors() {
        let bad = [
            FamilyInstance::new(FamilyId::T21, 4),
            FamilyInstance::new(FamilyId::T21, 1),
            FamilyInstance::new(FamilyId::C34, 6),
            FamilyInstance::new(FamilyId::T33, 4),
            FamilyInstance::new(FamilyId::K5, 6).with_k(2),
            FamilyInstance::new(FamilyId::K5, 6).with_k(1).with_a(3),
            FamilyInstance::new(FamilyId::K2, 3).with_q(4),
            FamilyInstance::t33(6, 1, 2),
        ];
        for inst in bad {
            assert!(instantiate_default(&inst).is_err(), "{inst}");
        }
        let inst = FamilyInstance::new(FamilyId::T21, 5);
        assert!(instantiate(&inst, &FieldCtx::binary(4).unwrap()).is_err());
    }

    #[test]
    fn catalog_specs_fix_zero_and_one() {
        for m in 3..=9u32 {
            for id in FamilyId::ALL {
                let inst = FamilyInstance::new(id, m);
                if id == FamilyId::T33 || id == FamilyId::K5 || inst.check_structure().is_err() {
                    continue;
                }
                let spec = instantiate_default(&inst).unwrap();
                let f = spec.field().clone();
                assert_eq!(spec.eval(f.zero()).unwrap(), f.zero());
                assert!(spec.terms().len() <= 3);
                if spec.shape() == Shape::Sum && spec.terms().len() == 3 {
                    assert_eq!(spec.eval(f.one()).unwrap(), f.one(), "{inst}");
                }
            }
        }
    }

    #[test]
    fn readings_round_trip() {
        for id in FamilyId::ALL {
            for r in id.candidate_readings() {
                assert_eq!(Reading::parse(&r.to_string()).unwrap(), r);
            }
        }
        assert_eq!(Reading::all_roundings(3).len(), 8);
        assert!(Reading::parse("xyz").is_err());
    }
}

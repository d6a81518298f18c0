//! Enumeration of unit-coefficient permutation trinomials
//! `x^e1 + x^e2 + x^e3` over GF(2^m), up to the doubling equivalence
//! `(e1, e2, e3) ~ (2 e1, 2 e2, 2 e3) mod (2^m - 1)`.
//!
//! Candidates are walked in lexicographic order and only canonical
//! representatives are evaluated. Evaluation walks the multiplicative group
//! through the antilog table and stops at the first repeated image; every
//! reported triple is re-verified afterwards with [`crate::permcheck`].

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{instantiate, FamilyId, FamilyInstance, TrinomialSpec};
use crate::galois::FieldCtx;
use crate::permcheck::is_permutation;
use crate::sweep::SweepConfig;

/// Sorted distinct exponents in `[1, 2^m - 2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExponentTriple {
    pub m: u32,
    pub e: [u64; 3],
}

impl ExponentTriple {
    pub fn new(m: u32, mut e: [u64; 3]) -> Result<Self> {
        if !(2..=32).contains(&m) {
            return Err(Error::InvalidArgument(format!("m = {m} outside 2..=32")));
        }
        let top = (1u64 << m) - 2;
        e.sort_unstable();
        if e[0] == e[1] || e[1] == e[2] {
            return Err(Error::InvalidArgument(format!("exponents {e:?} are not distinct")));
        }
        if e[0] < 1 || e[2] > top {
            return Err(Error::InvalidArgument(format!("exponents {e:?} outside [1, {top}]")));
        }
        Ok(ExponentTriple { m, e })
    }

    fn group(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    /// Multiplies every exponent by 2 modulo `2^m - 1` and re-sorts.
    pub fn double(&self) -> Self {
        let g = self.group();
        let mut e = self.e.map(|x| 2 * x % g);
        e.sort_unstable();
        ExponentTriple { m: self.m, e }
    }

    /// All distinct triples in the doubling orbit, in orbit order.
    pub fn orbit(&self) -> Vec<ExponentTriple> {
        let mut out = vec![*self];
        let mut t = self.double();
        while t != *self {
            out.push(t);
            t = t.double();
        }
        out
    }

    pub fn orbit_size(&self) -> usize {
        self.orbit().len()
    }

    /// Lexicographically smallest triple of the orbit.
    pub fn canonicalize(&self) -> Self {
        let mut best = *self;
        let mut t = self.double();
        for _ in 1..self.m {
            best = best.min(t);
            t = t.double();
        }
        best
    }

    pub fn is_canonical(&self) -> bool {
        self.canonicalize() == *self
    }

    /// Every exponent a power of two: the trinomial is additive.
    pub fn is_linearized(&self) -> bool {
        self.e.iter().all(|x| x.is_power_of_two())
    }

    /// The triple of a unit-coefficient trinomial with three distinct terms.
    pub fn from_spec(spec: &TrinomialSpec) -> Option<Self> {
        let field = spec.field();
        if field.characteristic() != 2 || !spec.has_unit_coefficients() || spec.terms().len() != 3 {
            return None;
        }
        if spec.shape() != crate::families::Shape::Sum {
            return None;
        }
        let e = spec.exponents();
        ExponentTriple::new(field.degree(), [e[0], e[1], e[2]]).ok()
    }

    pub fn to_spec(&self, field: &FieldCtx) -> Result<TrinomialSpec> {
        TrinomialSpec::from_exponents(field, &self.e.map(|x| x as i128))
    }
}

impl fmt::Display for ExponentTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.e[0], self.e[1], self.e[2])
    }
}

/// Result of matching a canonical triple against the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub family: Option<FamilyId>,
    /// Instance string of the match, e.g. `T33:q=2,k=3,m=6`.
    pub instance: Option<String>,
    pub linearized: bool,
}

impl Classification {
    pub fn label(&self) -> &str {
        self.family.map_or("unexplained", |f| f.tag())
    }
}

/// Catalog instances at `m` that are unit-coefficient trinomials, in catalog order.
pub fn catalog_triples(field: &FieldCtx) -> Vec<(FamilyInstance, ExponentTriple)> {
    let m = field.degree();
    let mut insts = Vec::new();
    for id in FamilyId::ALL {
        match id {
            FamilyId::T33 if m.is_multiple_of(2) => {
                // exponents are periodic in k with period 2^(m/2) + 1
                let period = (1u64 << (m / 2)) + 1;
                insts.extend((1..=period).map(|k| FamilyInstance::t33(2, k, m)));
            }
            // a = 1 makes the coefficients units
            FamilyId::K5 if m.is_multiple_of(3) => insts.push(FamilyInstance::new(id, m).with_k(m as u64 / 3).with_a(1)),
            FamilyId::T33 | FamilyId::K5 => {}
            _ => insts.push(FamilyInstance::new(id, m)),
        }
    }
    insts
        .into_iter()
        .filter_map(|inst| {
            let spec = instantiate(&inst, field).ok()?;
            let t = ExponentTriple::from_spec(&spec)?;
            Some((inst, t.canonicalize()))
        })
        .collect()
}

fn classify_with(t: &ExponentTriple, table: &[(FamilyInstance, ExponentTriple)]) -> Classification {
    let hit = table.iter().find(|(_, c)| c == t);
    Classification {
        family: hit.map(|(i, _)| i.family),
        instance: hit.map(|(i, _)| i.to_string()),
        linearized: t.is_linearized(),
    }
}

/// First catalog family whose instance at `m` canonicalizes to `t`.
pub fn classify(t: &ExponentTriple) -> Result<Classification> {
    let field = FieldCtx::binary(t.m)?;
    Ok(classify_with(&t.canonicalize(), &catalog_triples(&field)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Report only orbit representatives; otherwise every orbit member.
    pub canonical_only: bool,
    pub classify: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            canonical_only: true,
            classify: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub m: u32,
    pub e1: u64,
    pub e2: u64,
    pub e3: u64,
    pub orbit_size: usize,
    pub family: String,
    pub verified: bool,
    pub linearized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub m: u32,
    pub modulus: String,
    /// Canonical triples evaluated.
    pub candidates: u64,
    /// Number of distinct orbits that permute.
    pub orbits: u64,
    pub unexplained: u64,
    pub records: Vec<SearchRecord>,
    #[serde(skip)]
    pub elapsed_ms: u64,
}

/// `true` when `x^e1 + x^e2 + x^e3` permutes, using the antilog walk.
fn permutes_by_tables(exp: &[u32], t: &ExponentTriple, seen: &mut [u64]) -> bool {
    let g = exp.len() as u64;
    seen.iter_mut().for_each(|w| *w = 0);
    // 0 -> 0 is taken
    seen[0] = 1;
    let [e1, e2, e3] = t.e;
    let (mut i1, mut i2, mut i3) = (0u64, 0u64, 0u64);
    for _ in 0..g {
        let y = (exp[i1 as usize] ^ exp[i2 as usize] ^ exp[i3 as usize]) as usize;
        let (w, b) = (y / 64, y % 64);
        if seen[w] >> b & 1 == 1 {
            return false;
        }
        seen[w] |= 1 << b;
        i1 += e1;
        if i1 >= g {
            i1 -= g;
        }
        i2 += e2;
        if i2 >= g {
            i2 -= g;
        }
        i3 += e3;
        if i3 >= g {
            i3 -= g;
        }
    }
    true
}

/// Whether `x^e1 + x^e2 + x^e3` permutes `field`, by the same walk the
/// enumeration uses.
pub fn permutes(field: &FieldCtx, t: &ExponentTriple) -> Result<bool> {
    if field.characteristic() != 2 || field.degree() != t.m {
        return Err(Error::InvalidArgument(format!("{t} is not a triple over {}", field.descriptor())));
    }
    let exp = field.log_tables()?.antilogs();
    let mut seen = vec![0u64; field.order().div_ceil(64) as usize];
    Ok(permutes_by_tables(exp, t, &mut seen))
}

/// Smallest element of the cyclotomic coset of `e` modulo `2^m - 1`.
fn coset_leader(e: u64, m: u32) -> u64 {
    let g = (1u64 << m) - 1;
    let mut best = e;
    let mut x = e;
    for _ in 1..m {
        x = 2 * x % g;
        best = best.min(x);
    }
    best
}

/// All canonical permutation triples over GF(2^m) with the default modulus.
pub fn enumerate(m: u32, opts: SearchOptions, cfg: &SweepConfig) -> Result<SearchOutcome> {
    enumerate_in(&FieldCtx::binary(m)?, opts, cfg)
}

/// [`enumerate`] over an explicit binary field.
pub fn enumerate_in(field: &FieldCtx, opts: SearchOptions, cfg: &SweepConfig) -> Result<SearchOutcome> {
    if field.characteristic() != 2 {
        return Err(Error::WrongCharacteristic(field.characteristic()));
    }
    let m = field.degree();
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "GF(2^{m}) has fewer than three usable exponents"
        )));
    }
    cfg.check_order(field.order())?;
    let start = Instant::now();
    let tables = field.log_tables()?;
    let exp = tables.antilogs();
    let top = field.order() - 2;
    // a canonical triple starts with a coset leader
    let leaders: Vec<u64> = (1..=top).filter(|&e| coset_leader(e, m) == e).collect();
    let words = field.order().div_ceil(64) as usize;
    let per_leader = cfg.map_indices(leaders.len(), |i| {
        let e1 = leaders[i];
        let mut seen = vec![0u64; words];
        let mut found = Vec::new();
        let mut candidates = 0u64;
        for e2 in e1 + 1..top {
            for e3 in e2 + 1..=top {
                let t = ExponentTriple { m, e: [e1, e2, e3] };
                if !t.is_canonical() {
                    continue;
                }
                candidates += 1;
                if permutes_by_tables(exp, &t, &mut seen) {
                    found.push(t);
                }
            }
        }
        (candidates, found)
    });
    let mut candidates = 0;
    let mut found = Vec::new();
    for (c, f) in per_leader {
        candidates += c;
        found.extend(f);
    }
    found.sort_unstable();

    let table = if opts.classify {
        catalog_triples(field)
    } else {
        Vec::new()
    };
    let check = SweepConfig {
        threads: 1,
        ..*cfg
    };
    let mut records = Vec::new();
    let mut unexplained = 0;
    for t in &found {
        let verified = is_permutation(&t.to_spec(field)?, &check)?.is_permutation;
        let class = classify_with(t, &table);
        let family = if opts.classify {
            class.label().to_string()
        } else {
            String::new()
        };
        if opts.classify && class.family.is_none() {
            unexplained += 1;
        }
        let orbit = t.orbit();
        let members = if opts.canonical_only {
            vec![*t]
        } else {
            let mut o = orbit.clone();
            o.sort_unstable();
            o
        };
        for u in members {
            records.push(SearchRecord {
                m,
                e1: u.e[0],
                e2: u.e[1],
                e3: u.e[2],
                orbit_size: orbit.len(),
                family: family.clone(),
                verified,
                linearized: class.linearized,
            });
        }
    }
    Ok(SearchOutcome {
        m,
        modulus: field.descriptor(),
        candidates,
        orbits: found.len() as u64,
        unexplained,
        records,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub const CSV_HEADER: &str = "m,e1,e2,e3,orbit_size,family,verified";

impl SearchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.m, self.e1, self.e2, self.e3, self.orbit_size, self.family, self.verified
        )
    }

    pub fn triple(&self) -> ExponentTriple {
        ExponentTriple {
            m: self.m,
            e: [self.e1, self.e2, self.e3],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(m: u32, e: [u64; 3]) -> ExponentTriple {
        ExponentTriple::new(m, e).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(t(3, [2, 3, 6]).canonicalize(), t(3, [1, 3, 5]));
        assert_eq!(t(3, [1, 3, 5]).canonicalize(), t(3, [1, 3, 5]));
        assert_eq!(t(3, [1, 2, 4]).canonicalize(), t(3, [1, 2, 4]));
        assert_eq!(t(3, [1, 2, 4]).orbit_size(), 1);
        assert_eq!(t(3, [2, 3, 6]).orbit(), vec![t(3, [2, 3, 6]), t(3, [4, 5, 6]), t(3, [1, 3, 5])]);
    }

    #[test]
    fn invalid_triples() {
        assert!(ExponentTriple::new(3, [1, 1, 2]).is_err());
        assert!(ExponentTriple::new(3, [0, 1, 2]).is_err());
        assert!(ExponentTriple::new(3, [1, 2, 7]).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&t(3, [1, 3, 5])).unwrap().family, Some(FamilyId::K2));
        let lin = classify(&t(3, [1, 2, 4])).unwrap();
        assert_eq!(lin.family, None);
        assert!(lin.linearized);
        let f = FieldCtx::binary(5).unwrap();
        let t23 = instantiate(&FamilyInstance::new(FamilyId::T23, 5), &f).unwrap();
        let c = classify(&ExponentTriple::from_spec(&t23).unwrap()).unwrap();
        assert_eq!(c.family, Some(FamilyId::T23));
    }

    #[test]
    fn coset_leaders() {
        assert_eq!(coset_leader(6, 3), 3);
        assert_eq!(coset_leader(5, 3), 3);
        assert_eq!(coset_leader(1, 3), 1);
    }

    #[test]
    fn m3_contains_k2() {
        let out = enumerate(3, SearchOptions::default(), &SweepConfig::default()).unwrap();
        assert!(out.records.iter().any(|r| r.triple() == t(3, [1, 3, 5])));
        assert!(out.records.iter().all(|r| r.verified));
    }

    #[test]
    fn expanded_output_lists_orbits() {
        let opts = SearchOptions {
            canonical_only: false,
            classify: false,
        };
        let out = enumerate(3, opts, &SweepConfig::default()).unwrap();
        let total: usize = out.records.iter().filter(|r| r.triple().is_canonical()).map(|r| r.orbit_size).sum();
        assert_eq!(total, out.records.len());
    }
}

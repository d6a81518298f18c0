//! Exhaustive verification: bijectivity, compositional inverses, value-set
//! statistics and the solution census of `y^2k + y^k ybar^k + ybar^2k = 0`.
//!
//! Every check evaluates the function on the whole field. The domain is split
//! into contiguous index ranges (see [`crate::sweep`]); each range fills its
//! own presence bitmap and the bitmaps are or-ed together, so the answer does
//! not depend on the thread count.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{FamilyId, FamilyInstance, Reading, TrinomialSpec};
use crate::galois::{FieldCtx, FieldElement};
use crate::sweep::SweepConfig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub is_permutation: bool,
    pub domain_size: u64,
    /// Smallest `x2` (in index order) whose image was already taken, paired
    /// with the smallest `x1 < x2` sharing that image.
    pub collision: Option<(FieldElement, FieldElement)>,
    /// Number of field elements with no preimage.
    pub image_deficit: u64,
    /// Wall-clock time of the sweep; not serialized so reports stay reproducible.
    #[serde(skip)]
    pub elapsed_ms: u64,
}

impl VerificationReport {
    fn assert_consistent(&self) {
        assert_eq!(self.is_permutation, self.collision.is_none(), "report: collision vs verdict");
        assert_eq!(self.is_permutation, self.image_deficit == 0, "report: deficit vs verdict");
    }
}

struct Bitmap(Vec<u64>);

impl Bitmap {
    fn new(bits: u64) -> Self {
        Bitmap(vec![0; bits.div_ceil(64) as usize])
    }

    /// Sets bit `i`; returns whether it was already set.
    #[inline]
    fn test_and_set(&mut self, i: u64) -> bool {
        let (w, b) = ((i / 64) as usize, i % 64);
        let was = self.0[w] >> b & 1 == 1;
        self.0[w] |= 1 << b;
        was
    }

    fn or_assign(&mut self, other: &Bitmap) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= *b;
        }
    }

    fn count(&self) -> u64 {
        self.0.iter().map(|w| w.count_ones() as u64).sum()
    }
}

/// First collision in index order, found by one sequential pass.
fn first_collision(spec: &TrinomialSpec) -> Option<(u64, u64)> {
    let order = spec.field().order();
    let mut seen = Bitmap::new(order);
    let x2 = (0..order).find(|&x| seen.test_and_set(spec.eval_raw(x)))?;
    let y = spec.eval_raw(x2);
    let x1 = (0..x2).find(|&x| spec.eval_raw(x) == y)?;
    Some((x1, x2))
}

/// Evaluates `spec` on every element and reports whether it is a bijection.
pub fn is_permutation(spec: &TrinomialSpec, cfg: &SweepConfig) -> Result<VerificationReport> {
    let field = spec.field();
    let order = field.order();
    cfg.check_order(order)?;
    let start = Instant::now();
    let partials = cfg.map_ranges(order, |r| {
        let mut hit = Bitmap::new(order);
        for x in r {
            hit.test_and_set(spec.eval_raw(x));
        }
        hit
    });
    let mut partials = partials.into_iter();
    let mut image = partials.next().unwrap_or_else(|| Bitmap::new(order));
    for p in partials {
        image.or_assign(&p);
    }
    let image_deficit = order - image.count();
    let collision = if image_deficit == 0 {
        None
    } else {
        first_collision(spec).map(|(a, b)| (field.wrap(a), field.wrap(b)))
    };
    let report = VerificationReport {
        is_permutation: image_deficit == 0,
        domain_size: order,
        collision,
        image_deficit,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    report.assert_consistent();
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComposeOutcome {
    pub is_inverse: bool,
    /// Smallest `x` with `g(f(x)) != x`.
    pub witness: Option<FieldElement>,
}

/// Checks `g(f(x)) = x` on the whole field.
pub fn compose_check(f: &TrinomialSpec, g: &TrinomialSpec, cfg: &SweepConfig) -> Result<ComposeOutcome> {
    if !f.field().same_field(g.field()) {
        return Err(Error::FieldMismatch);
    }
    let field = f.field();
    cfg.check_order(field.order())?;
    let firsts = cfg.map_ranges(field.order(), |mut r| r.find(|&x| g.eval_raw(f.eval_raw(x)) != x));
    let witness = firsts.into_iter().flatten().min().map(|x| field.wrap(x));
    Ok(ComposeOutcome {
        is_inverse: witness.is_none(),
        witness,
    })
}

/// Verdict of one candidate reading of an inverse family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReadingVerdict {
    pub reading: Reading,
    pub is_inverse: bool,
}

/// Tries every candidate reading of `family` (C35 or C37) at `m` against its
/// partner and returns the verdicts in candidate order.
pub fn select_inverse_reading(family: FamilyId, m: u32, cfg: &SweepConfig) -> Result<Vec<ReadingVerdict>> {
    let partner = family
        .inverse_partner()
        .filter(|_| !family.candidate_readings().is_empty())
        .ok_or_else(|| Error::InvalidArgument(format!("{family} has no candidate inverse readings")))?;
    let forward_inst = FamilyInstance::new(partner, m);
    let field = forward_inst.field()?;
    let forward = crate::families::instantiate(&forward_inst, &field)?;
    family
        .candidate_readings()
        .into_iter()
        .map(|reading| {
            let inst = FamilyInstance::new(family, m).with_reading(reading.clone());
            let g = crate::families::instantiate(&inst, &field)?;
            let outcome = compose_check(&forward, &g, cfg)?;
            Ok(ReadingVerdict {
                reading,
                is_inverse: outcome.is_inverse,
            })
        })
        .collect()
}

/// Number of `y` in GF(q^m) with `y^2k + y^k ybar^k + ybar^2k = 0`, where
/// `ybar = y^(q^(m/2))`, over the default field.
pub fn eqa_solution_count(q: u64, m: u32, k: u64, cfg: &SweepConfig) -> Result<u64> {
    let field = FamilyInstance::new(FamilyId::T33, m).with_q(q).with_k(k.max(1)).field()?;
    eqa_solution_count_in(&field, k, cfg)
}

/// [`eqa_solution_count`] over an explicit field whose subfield is GF(q).
pub fn eqa_solution_count_in(field: &FieldCtx, k: u64, cfg: &SweepConfig) -> Result<u64> {
    let q = field.subfield_order();
    let m = field.relative_degree();
    if q.is_multiple_of(3) {
        return Err(Error::InvalidArgument(format!(
            "q = {q} is divisible by 3, outside the equation's hypothesis"
        )));
    }
    if !m.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("m must be even, got {m}")));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    cfg.check_order(field.order())?;
    let half = q.pow(m / 2);
    let counts = cfg.map_ranges(field.order(), |r| {
        r.filter(|&y| {
            let yk = field.pow_raw(y, k);
            let bk = field.pow_raw(field.pow_raw(y, half), k);
            let lhs = field.add_raw(
                field.add_raw(field.mul_raw(yk, yk), field.mul_raw(yk, bk)),
                field.mul_raw(bk, bk),
            );
            lhs == 0
        })
        .count() as u64
    });
    Ok(counts.into_iter().sum())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueSet {
    pub image_size: u64,
    pub fixed_points: u64,
    /// `j -> number of field elements with exactly j preimages`, for `j >= 0`.
    pub preimage_histogram: BTreeMap<u64, u64>,
}

/// Image size, fixed points and preimage histogram from one sweep.
pub fn value_set(spec: &TrinomialSpec, cfg: &SweepConfig) -> Result<ValueSet> {
    let order = spec.field().order();
    cfg.check_order(order)?;
    let partials = cfg.map_ranges(order, |r| {
        let mut counts = vec![0u32; order as usize];
        let mut fixed = 0u64;
        for x in r {
            let y = spec.eval_raw(x);
            counts[y as usize] += 1;
            fixed += u64::from(y == x);
        }
        (counts, fixed)
    });
    let mut total = vec![0u32; order as usize];
    let mut fixed_points = 0;
    for (counts, fixed) in partials {
        for (t, c) in total.iter_mut().zip(counts) {
            *t += c;
        }
        fixed_points += fixed;
    }
    let mut preimage_histogram = BTreeMap::new();
    for &c in &total {
        *preimage_histogram.entry(c as u64).or_insert(0) += 1;
    }
    let image_size = order - preimage_histogram.get(&0).copied().unwrap_or(0);
    Ok(ValueSet {
        image_size,
        fixed_points,
        preimage_histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::instantiate_default;

    fn cfg() -> SweepConfig {
        SweepConfig::default()
    }

    #[test]
    fn identity_permutes() {
        let f = FieldCtx::binary(5).unwrap();
        let r = is_permutation(&TrinomialSpec::identity(&f), &cfg()).unwrap();
        assert!(r.is_permutation);
        assert_eq!(r.domain_size, 32);
        assert_eq!(r.image_deficit, 0);
    }

    #[test]
    fn gf4_non_permutation_has_witness() {
        let f = FieldCtx::binary(2).unwrap();
        let spec = TrinomialSpec::from_exponents(&f, &[1, 2, 3]).unwrap();
        let r = is_permutation(&spec, &cfg()).unwrap();
        assert!(!r.is_permutation);
        // hand evaluation: f(0)=0, f(1)=1, f(w)=w+w^2+1=0, f(w^2)=0
        let (x1, x2) = r.collision.unwrap();
        assert_eq!((x1.value(), x2.value()), (0, 2));
        assert_eq!(r.image_deficit, 2);
    }

    #[test]
    fn thread_count_is_invisible() {
        let inst = FamilyInstance::t33(2, 1, 6);
        let spec = instantiate_default(&inst).unwrap();
        let serial = is_permutation(&spec, &cfg()).unwrap();
        for t in [2, 5] {
            let mut par = is_permutation(&spec, &SweepConfig::with_threads(t)).unwrap();
            par.elapsed_ms = serial.elapsed_ms;
            assert_eq!(par, serial);
        }
    }

    #[test]
    fn bound_refusal_names_the_bound() {
        let f = FieldCtx::binary(12).unwrap();
        let e = is_permutation(&TrinomialSpec::identity(&f), &cfg().with_max_order(1000)).unwrap_err();
        assert!(e.to_string().contains("1000"));
    }

    #[test]
    fn compose_identity_and_failure() {
        let f = FieldCtx::binary(3).unwrap();
        let id = TrinomialSpec::identity(&f);
        assert!(compose_check(&id, &id, &cfg()).unwrap().is_inverse);
        let t21 = instantiate_default(&FamilyInstance::new(FamilyId::T21, 3)).unwrap();
        let out = compose_check(&t21, &id, &cfg()).unwrap();
        assert!(!out.is_inverse);
        // f(0)=0 and f(1)=1, so the first mismatch is at index 2 or later
        assert!(out.witness.unwrap().value() >= 2);
        let g = FieldCtx::binary(4).unwrap();
        assert!(compose_check(&id, &TrinomialSpec::identity(&g), &cfg()).is_err());
    }

    #[test]
    fn c34_inverse_at_m4() {
        let c34 = instantiate_default(&FamilyInstance::new(FamilyId::C34, 4)).unwrap();
        let c35 = instantiate_default(&FamilyInstance::new(FamilyId::C35, 4)).unwrap();
        assert!(compose_check(&c34, &c35, &cfg()).unwrap().is_inverse);
    }

    #[test]
    fn eqa_small_cases() {
        assert_eq!(eqa_solution_count(2, 4, 1, &cfg()).unwrap(), 1);
        assert_eq!(eqa_solution_count(2, 2, 1, &cfg()).unwrap(), 3);
        assert_eq!(eqa_solution_count(4, 2, 1, &cfg()).unwrap(), 1);
        assert!(eqa_solution_count(3, 2, 1, &cfg()).is_err());
        assert!(eqa_solution_count(2, 3, 1, &cfg()).is_err());
    }

    #[test]
    fn value_sets() {
        let f = FieldCtx::binary(4).unwrap();
        let id = value_set(&TrinomialSpec::identity(&f), &cfg()).unwrap();
        assert_eq!((id.image_size, id.fixed_points), (16, 16));
        let sq = value_set(&TrinomialSpec::monomial(&f, 2), &cfg()).unwrap();
        assert_eq!((sq.image_size, sq.fixed_points), (16, 2));
        let g = FieldCtx::binary(2).unwrap();
        let cube = value_set(&TrinomialSpec::monomial(&g, 3), &cfg()).unwrap();
        assert_eq!(cube.image_size, 2);
        assert_eq!(cube.preimage_histogram, BTreeMap::from([(0, 2), (1, 1), (3, 1)]));
    }
}

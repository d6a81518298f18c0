//! Differential uniformity and fixed points.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::TrinomialSpec;
use crate::sweep::SweepConfig;

/// Largest field the quadratic differential sweep accepts.
pub const DIFFERENTIAL_BOUND: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialProfile {
    pub order: u64,
    /// `max_{a != 0, b} #{x : f(x + a) - f(x) = b}`.
    pub uniformity: u64,
    /// `count -> number of pairs (a != 0, b) attaining it`.
    pub spectrum: BTreeMap<u64, u64>,
}

impl DifferentialProfile {
    /// `sum count * frequency`, which must equal `(order - 1) * order`.
    pub fn mass(&self) -> u128 {
        self.spectrum.iter().map(|(&c, &n)| c as u128 * n as u128).sum()
    }
}

pub fn differential_spectrum(spec: &TrinomialSpec, cfg: &SweepConfig) -> Result<DifferentialProfile> {
    let field = spec.field();
    let order = field.order();
    let bound = cfg.max_order.min(DIFFERENTIAL_BOUND);
    if order > bound {
        return Err(Error::TooLarge { order, bound });
    }
    let values: Vec<u64> = (0..order).map(|x| spec.eval_raw(x)).collect();
    let rows = cfg.map_ranges(order - 1, |r| {
        let mut counts = vec![0u64; order as usize];
        let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
        let mut best = 0;
        for a in r.map(|i| i + 1) {
            counts.iter_mut().for_each(|c| *c = 0);
            for x in 0..order {
                let d = field.sub_raw(values[field.add_raw(x, a) as usize], values[x as usize]);
                counts[d as usize] += 1;
            }
            for &c in &counts {
                *hist.entry(c).or_insert(0) += 1;
                best = best.max(c);
            }
        }
        (best, hist)
    });
    let mut spectrum = BTreeMap::new();
    let mut uniformity = 0;
    for (best, hist) in rows {
        uniformity = uniformity.max(best);
        for (c, n) in hist {
            *spectrum.entry(c).or_insert(0) += n;
        }
    }
    let profile = DifferentialProfile {
        order,
        uniformity,
        spectrum,
    };
    assert_eq!(profile.mass(), (order as u128 - 1) * order as u128, "spectrum mass");
    if field.characteristic() == 2 {
        assert!(uniformity >= 2 && uniformity % 2 == 0, "uniformity {uniformity} in characteristic 2");
    }
    Ok(profile)
}

/// `#{x : f(x) = x}`.
pub fn fixed_point_count(spec: &TrinomialSpec, cfg: &SweepConfig) -> Result<u64> {
    let order = spec.field().order();
    cfg.check_order(order)?;
    let parts = cfg.map_ranges(order, |r| r.filter(|&x| spec.eval_raw(x) == x).count() as u64);
    Ok(parts.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FieldCtx;

    #[test]
    fn identity_profile() {
        let f = FieldCtx::binary(4).unwrap();
        let p = differential_spectrum(&TrinomialSpec::identity(&f), &SweepConfig::default()).unwrap();
        assert_eq!(p.uniformity, 16);
        assert_eq!(p.spectrum, BTreeMap::from([(0, 15 * 15), (16, 15)]));
    }

    #[test]
    fn cube_is_apn_on_gf8() {
        let f = FieldCtx::binary(3).unwrap();
        let p = differential_spectrum(&TrinomialSpec::monomial(&f, 3), &SweepConfig::default()).unwrap();
        assert_eq!(p.uniformity, 2);
    }

    #[test]
    fn cube_on_gf4_is_not_apn() {
        // x^3 on GF(4): x^3 + (x+a)^3 = a x^2 + a^2 x + a^3 is 2-to-1 onto its image
        let f = FieldCtx::binary(2).unwrap();
        let p = differential_spectrum(&TrinomialSpec::monomial(&f, 3), &SweepConfig::default()).unwrap();
        assert_eq!(p.uniformity, 2);
    }

    #[test]
    fn odd_characteristic_profile() {
        let f = FieldCtx::new(3, 2, None).unwrap();
        let p = differential_spectrum(&TrinomialSpec::monomial(&f, 2), &SweepConfig::default()).unwrap();
        // x^2 is planar in odd characteristic
        assert_eq!(p.uniformity, 1);
    }

    #[test]
    fn too_large_refused() {
        let f = FieldCtx::binary(17).unwrap();
        assert!(differential_spectrum(&TrinomialSpec::identity(&f), &SweepConfig::default()).is_err());
    }

    #[test]
    fn fixed_points() {
        let f = FieldCtx::binary(4).unwrap();
        let cfg = SweepConfig::default();
        assert_eq!(fixed_point_count(&TrinomialSpec::identity(&f), &cfg).unwrap(), 16);
        assert_eq!(fixed_point_count(&TrinomialSpec::monomial(&f, 2), &cfg).unwrap(), 2);
    }
}

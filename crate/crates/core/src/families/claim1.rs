use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{FieldCtx, FieldElement};
use crate::sweep::SweepConfig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim1Outcome {
    pub holds: bool,
    /// First `a` (in index order) with `Tr(D1) != 1`.
    pub witness: Option<FieldElement>,
    /// Number of `a` values examined.
    pub checked: u64,
}

/// `D1 = A1 * A3^(2^d+1) / A2^(2^d+2)` for `a` outside GF(2), with `d = (m+1)/2`,
/// `b = a^(2^d)`, `A1 = a(b+1)^2(a^2+a+1)`, `A2 = a(b+1)^2`, `A3 = (a+1)^3 + (b+1)^2`.
pub(crate) fn d1(field: &FieldCtx, a: u64) -> u64 {
    let d = field.degree().div_ceil(2);
    let mul = |x, y| field.mul_raw(x, y);
    let sq = |x| field.mul_raw(x, x);
    let b = field.pow_raw(a, 1u64 << d);
    let b1sq = sq(b ^ 1);
    let a2 = mul(a, b1sq);
    let a1 = mul(a2, sq(a) ^ a ^ 1);
    let a1p = a ^ 1;
    let a3 = mul(sq(a1p), a1p) ^ b1sq;
    let t = (1u64 << d) + 1;
    let num = mul(a1, field.pow_raw(a3, t));
    let den = field.pow_raw(a2, t + 1);
    mul(num, field.pow_raw(den, field.order() - 2))
}

/// Checks that `Tr(D1) = 1` for every `a` in GF(2^m) \ GF(2), `m` odd.
pub fn claim1_check(field: &FieldCtx, cfg: &SweepConfig) -> Result<Claim1Outcome> {
    if field.characteristic() != 2 {
        return Err(Error::WrongCharacteristic(field.characteristic()));
    }
    if field.degree().is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "the trace identity is stated for odd m, got m = {}",
            field.degree()
        )));
    }
    cfg.check_order(field.order())?;
    let order = field.order();
    let firsts = cfg.map_ranges(order, |r| r.filter(|&a| a > 1).find(|&a| field.trace_raw(d1(field, a)) != 1));
    let witness = firsts.into_iter().flatten().min().map(|a| field.wrap(a));
    Ok(Claim1Outcome {
        holds: witness.is_none(),
        witness,
        checked: order - 2,
    })
}

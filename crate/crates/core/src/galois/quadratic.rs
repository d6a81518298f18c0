use super::{FieldCtx, FieldElement};
use crate::error::{Error, Result};

/// Solves `sum t_i * columns[i] = target` over GF(2), each vector a bit mask.
fn solve_gf2(columns: &[u64], target: u64) -> Option<u64> {
    // basis vectors keyed by their highest set bit, with the column combination that produced them
    let mut basis: Vec<(u64, u64)> = Vec::new();
    let reduce = |basis: &[(u64, u64)], mut v: u64, mut combo: u64| {
        for &(b, c) in basis {
            let top = 63 - b.leading_zeros();
            if v >> top & 1 == 1 {
                v ^= b;
                combo ^= c;
            }
        }
        (v, combo)
    };
    for (i, &col) in columns.iter().enumerate() {
        let (v, combo) = reduce(&basis, col, 1 << i);
        if v != 0 {
            basis.push((v, combo));
            // pivots in decreasing order of their top bit
            basis.sort_by_key(|&(b, _)| b.leading_zeros());
        }
    }
    let (rest, combo) = reduce(&basis, target, 0);
    (rest == 0).then_some(combo)
}

impl FieldCtx {
    /// Roots of `x^2 + u*x + v` in GF(2^n), sorted by index.
    ///
    /// For `u != 0` the substitution `x = u*t` turns the equation into
    /// `t^2 + t = v/u^2`, which is solved as a GF(2)-linear system for the map
    /// `t -> t^2 + t`; roots exist iff `Tr(v/u^2) = 0`. For `u = 0` the single
    /// root is the square root `v^(2^(n-1))`; this case is a convention of
    /// this crate, the trace criterion only covers `u != 0`.
    pub fn solve_affine_quadratic(&self, u: FieldElement, v: FieldElement) -> Result<Vec<FieldElement>> {
        if self.characteristic() != 2 {
            return Err(Error::WrongCharacteristic(self.characteristic()));
        }
        let (u, v) = (self.check(u)?, self.check(v)?);
        let n = self.degree();
        if u == 0 {
            return Ok(vec![self.wrap(self.pow_raw(v, 1u64 << (n - 1)))]);
        }
        let u_inv = self.pow_raw(u, self.order() - 2);
        let c = self.mul_raw(v, self.mul_raw(u_inv, u_inv));
        let columns: Vec<u64> = (0..n)
            .map(|i| {
                let e = 1u64 << i;
                self.mul_raw(e, e) ^ e
            })
            .collect();
        let Some(t0) = solve_gf2(&columns, c) else {
            return Ok(Vec::new());
        };
        let mut roots = vec![self.mul_raw(u, t0), self.mul_raw(u, t0 ^ 1)];
        roots.sort_unstable();
        Ok(roots.into_iter().map(|r| self.wrap(r)).collect())
    }
}

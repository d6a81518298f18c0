#![allow(dead_code)]

use permtri::FieldCtx;

/// The first two irreducible moduli of degree `n` over GF(p), found by
/// walking monic polynomials in index order and keeping those the field
/// constructor accepts. `None` when only one exists (GF(4)).
pub fn two_moduli(p: u64, n: u32) -> Option<(FieldCtx, FieldCtx)> {
    let mut found = Vec::new();
    let order = p.pow(n);
    for idx in 0..order {
        let mut c = Vec::with_capacity(n as usize + 1);
        let mut r = idx;
        for _ in 0..n {
            c.push(r % p);
            r /= p;
        }
        c.push(1);
        if let Ok(f) = FieldCtx::new(p, n, Some(&c)) {
            found.push(f);
            if found.len() == 2 {
                break;
            }
        }
    }
    let b = found.pop()?;
    let a = found.pop()?;
    Some((a, b))
}

/// `x^2 + u x + v` by direct substitution.
pub fn quadratic_roots_brute(f: &FieldCtx, u: u64, v: u64) -> Vec<u64> {
    let (u, v) = (f.element(u).unwrap(), f.element(v).unwrap());
    f.elements()
        .filter(|&x| {
            let lhs = f.add(f.add(f.mul(x, x).unwrap(), f.mul(u, x).unwrap()).unwrap(), v).unwrap();
            lhs.is_zero()
        })
        .map(|x| x.value())
        .collect()
}

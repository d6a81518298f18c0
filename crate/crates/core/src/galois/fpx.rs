//! Dense polynomials over a prime field GF(p).
//!
//! Coefficients are stored lowest degree first and kept in `[0, p)`.
//! Only what modulus validation and odd-characteristic arithmetic need.

pub type Poly = Vec<u64>;

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime: a^(p-2)
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

pub fn trim(f: &mut Poly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let lead_inv = inv_mod(b[db], p);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mulmod(r[dr], lead_inv, p);
        let shift = dr - db;
        for (j, &bj) in b[..=db].iter().enumerate() {
            let t = mulmod(c, bj, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(ai, bj, p)) % p;
        }
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let len = a.len().max(b.len());
    let mut out: Poly = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut a: Poly = a.to_vec();
    let mut b: Poly = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn pow_mod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), modulus, p);
        }
        b = rem(&mul(&b, &b, p), modulus, p);
        e >>= 1;
    }
    acc
}

/// Ben-Or test: a monic `f` of degree `n` is irreducible iff
/// `gcd(x^(p^i) - x, f) = 1` for `i = 1..=n/2`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    let mut h = rem(&x, f, p);
    for _ in 1..=n / 2 {
        h = pow_mod(&h, p, f, p);
        let g = gcd(f, &sub(&h, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Coefficient vector of the monic degree-`n` polynomial whose lower
/// coefficients are the base-`p` digits of `index`.
pub fn monic_from_index(index: u64, p: u64, n: usize) -> Poly {
    let mut v = Vec::with_capacity(n + 1);
    let mut r = index;
    for _ in 0..n {
        v.push(r % p);
        r /= p;
    }
    v.push(1);
    v
}

/// Lexicographically smallest monic irreducible of degree `n` over GF(p),
/// ordering by the coefficient vector read from the top degree down.
pub fn smallest_irreducible(p: u64, n: usize) -> Option<Poly> {
    let span = p.checked_pow(n as u32)?;
    (0..span)
        .map(|i| monic_from_index(i, p, n))
        .find(|f| is_irreducible(f, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_root(f: &[u64], p: u64) -> bool {
        (0..p).any(|x| {
            let mut acc = 0u64;
            for &c in f.iter().rev() {
                acc = (mulmod(acc, x, p) + c) % p;
            }
            acc == 0
        })
    }

    #[test]
    fn quadratics_and_cubics_match_root_test() {
        // degree 2 and 3 are irreducible iff they have no root
        for p in [3u64, 5, 7] {
            for n in [2usize, 3] {
                for i in 0..p.pow(n as u32) {
                    let f = monic_from_index(i, p, n);
                    assert_eq!(is_irreducible(&f, p), !has_root(&f, p), "p={p} f={f:?}");
                }
            }
        }
    }

    #[test]
    fn gf9_default_modulus() {
        assert_eq!(smallest_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn degree_four_counts() {
        // number of monic irreducibles of degree 4 over GF(3): (81 - 9) / 4 = 18
        let count = (0..81u64)
            .filter(|&i| is_irreducible(&monic_from_index(i, 3, 4), 3))
            .count();
        assert_eq!(count, 18);
    }
}

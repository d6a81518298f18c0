//! Word-packed GF(2)[x] kernels.
//!
//! A polynomial over GF(2) is a bit vector: bit `i` holds the coefficient of
//! `x^i`. Field elements of GF(2^n) are the residues of degree `< n`, so the
//! element index and the bit vector coincide.

/// Carryless product of two 64-bit polynomials.
#[inline]
pub fn clmul(a: u64, b: u64) -> u128 {
    let (a, mut b) = if a.count_ones() < b.count_ones() { (b, a) } else { (a, b) };
    let wide = a as u128;
    let mut acc = 0u128;
    while b != 0 {
        acc ^= wide << b.trailing_zeros();
        b &= b - 1;
    }
    acc
}

/// Carryless product when both operands have degree < 32.
#[inline]
pub fn clmul32(a: u64, b: u64) -> u64 {
    debug_assert!(a >> 32 == 0 && b >> 32 == 0);
    let (a, mut b) = if a.count_ones() < b.count_ones() { (b, a) } else { (a, b) };
    let mut acc = 0u64;
    while b != 0 {
        acc ^= a << b.trailing_zeros();
        b &= b - 1;
    }
    acc
}

/// Reduction of a product (degree < 2n - 1) modulo a degree-n polynomial.
#[derive(Clone, Debug)]
pub struct Reducer {
    degree: u32,
    /// Full modulus including the `x^degree` bit.
    modulus: u64,
}

impl Reducer {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus > 1, "modulus must have positive degree");
        Reducer {
            degree: 63 - modulus.leading_zeros(),
            modulus,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn reduce_u64(&self, mut r: u64) -> u64 {
        let n = self.degree;
        while r >> n != 0 {
            let top = 63 - r.leading_zeros();
            r ^= self.modulus << (top - n);
        }
        r
    }

    #[inline]
    pub fn reduce(&self, mut r: u128) -> u64 {
        let n = self.degree;
        let m = self.modulus as u128;
        while r >> n != 0 {
            let top = 127 - r.leading_zeros();
            r ^= m << (top - n);
        }
        r as u64
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.degree <= 32 {
            self.reduce_u64(clmul32(a, b))
        } else {
            self.reduce(clmul(a, b))
        }
    }
}

/// Remainder of `a` modulo `b` in GF(2)[x], both given as bit vectors.
pub fn poly_rem(mut a: u128, b: u128) -> u128 {
    assert!(b != 0);
    let db = 127 - b.leading_zeros();
    while a != 0 && 127 - a.leading_zeros() >= db {
        let da = 127 - a.leading_zeros();
        a ^= b << (da - db);
    }
    a
}

pub fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test for a binary polynomial of degree 1..=63.
pub fn is_irreducible(f: u64) -> bool {
    if f < 2 {
        return false;
    }
    let n = 63 - f.leading_zeros();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if f & 1 == 0 {
        return false;
    }
    let red = Reducer::new(f);
    // x^(2^i) mod f, starting from x
    let mut h: u64 = red.reduce_u64(2);
    for _ in 1..=n / 2 {
        h = red.mul(h, h);
        let g = poly_gcd(f as u128, (h ^ 2) as u128);
        if g != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomials of degree
/// 1..=32 over GF(2), as bit masks including the leading bit.
pub const SMALLEST_IRREDUCIBLE: [u64; 32] = [
    0x2,
    0x7,
    0xb,
    0x13,
    0x25,
    0x43,
    0x83,
    0x11b,
    0x203,
    0x409,
    0x805,
    0x1009,
    0x201b,
    0x4021,
    0x8003,
    0x1002b,
    0x20009,
    0x40009,
    0x80027,
    0x100009,
    0x200005,
    0x400003,
    0x800021,
    0x100001b,
    0x2000009,
    0x400001b,
    0x8000027,
    0x10000003,
    0x20000005,
    0x40000003,
    0x80000009,
    0x10000008d,
];

/// Smallest irreducible of the given degree, from the table when possible.
pub fn smallest_irreducible(n: u32) -> Option<u64> {
    match n {
        0 => None,
        1..=32 => Some(SMALLEST_IRREDUCIBLE[n as usize - 1]),
        33..=63 => ((1u64 << n)..=u64::MAX).find(|&f| is_irreducible(f)),
        _ => None,
    }
}

/// Every monic irreducible of degree `n`, in increasing order. Small `n` only.
pub fn irreducibles(n: u32) -> impl Iterator<Item = u64> {
    assert!((1..=24).contains(&n));
    ((1u64 << n)..(1u64 << (n + 1))).filter(|&f| is_irreducible(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    // brute-force divisibility oracle: no factor of degree 1..=n/2
    fn irreducible_by_trial(f: u64) -> bool {
        let n = 63 - f.leading_zeros();
        if n == 0 {
            return false;
        }
        for d in 2u64..(1 << (n / 2 + 1)) {
            if poly_rem(f as u128, d as u128) == 0 {
                return false;
            }
        }
        true
    }

    #[test]
    fn ben_or_agrees_with_trial_division() {
        for f in 2u64..(1 << 13) {
            assert_eq!(is_irreducible(f), irreducible_by_trial(f), "f = {f:#x}");
        }
    }

    #[test]
    fn table_is_the_smallest_irreducible() {
        for n in 1..=32u32 {
            let found = ((1u64 << n)..).find(|&f| is_irreducible(f)).unwrap();
            assert_eq!(SMALLEST_IRREDUCIBLE[n as usize - 1], found, "degree {n}");
        }
    }

    #[test]
    fn clmul_matches_wide_kernel() {
        let xs = [0u64, 1, 2, 3, 0xdead, 0xffff_ffff, 0x8000_0001, 0x1234_5678];
        for &a in &xs {
            for &b in &xs {
                assert_eq!(clmul32(a, b) as u128, clmul(a, b));
            }
        }
        assert_eq!(clmul(u64::MAX, 2), (u64::MAX as u128) << 1);
    }

    #[test]
    fn gf8_product() {
        let red = Reducer::new(0b1011);
        // x * x^2 = x^3 = x + 1
        assert_eq!(red.mul(0b010, 0b100), 0b011);
    }
}

use super::Inner;

/// Discrete log / antilog tables over a primitive element `g`.
#[derive(Debug)]
pub struct LogTables {
    generator: u64,
    /// `exp[i] = g^i` for `i` in `0..order-1`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(super) fn primitive_element(f: &Inner) -> u64 {
    let group = f.order - 1;
    if group == 1 {
        return 1;
    }
    let cofactors: Vec<u64> = prime_factors(group).into_iter().map(|r| group / r).collect();
    (2..f.order)
        .find(|&g| cofactors.iter().all(|&c| f.pow_schoolbook(g, c) != 1))
        .expect("a finite field has a primitive element")
}

impl LogTables {
    pub(super) fn build(f: &Inner) -> Self {
        assert!(f.order <= u32::MAX as u64 + 1);
        let g = primitive_element(f);
        let group = (f.order - 1) as usize;
        let mut exp = Vec::with_capacity(group);
        let mut log = vec![0u32; f.order as usize];
        let mut cur = 1u64;
        for i in 0..group {
            exp.push(cur as u32);
            log[cur as usize] = i as u32;
            cur = f.mul_schoolbook(cur, g);
        }
        debug_assert_eq!(cur, 1);
        LogTables {
            generator: g,
            exp,
            log,
        }
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Size of the multiplicative group.
    pub fn group_order(&self) -> u64 {
        self.exp.len() as u64
    }

    /// `g^i`, `i` reduced modulo the group order.
    #[inline]
    pub fn antilog(&self, i: u64) -> u64 {
        self.exp[(i % self.exp.len() as u64) as usize] as u64
    }

    /// Discrete log of a nonzero element.
    #[inline]
    pub fn log(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.log[a as usize] as u64
    }

    /// Antilog table as a slice (`exp[i] = g^i`).
    pub fn antilogs(&self) -> &[u32] {
        &self.exp
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.exp.len();
        let mut s = self.log[a as usize] as usize + self.log[b as usize] as usize;
        if s >= n {
            s -= n;
        }
        self.exp[s] as u64
    }

    #[inline]
    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return u64::from(e == 0);
        }
        let n = self.exp.len() as u128;
        let i = (self.log[a as usize] as u128 * e as u128) % n;
        self.exp[i as usize] as u64
    }
}

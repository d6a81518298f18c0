//! Finite-field contexts and arithmetic for GF(2^n) and GF(p^n).
//!
//! A [`FieldCtx`] is an immutable, cheaply clonable description of one
//! concrete field: characteristic, degree and reduction modulus. Elements are
//! plain [`FieldElement`] values holding the polynomial-basis coordinates read
//! as a base-`p` integer (for `p = 2` this is exactly the bit vector), tagged
//! with the identity of the context that produced them. Combining elements of
//! two different contexts is an error.

mod descriptor;
pub(crate) mod fpx;
pub mod gf2x;
mod quadratic;
mod tables;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub use tables::LogTables;
pub(crate) use descriptor::{parse_u64, split_pairs};

/// Default number of elements an exhaustive sweep may visit.
pub const DEFAULT_SWEEP_BOUND: u64 = 1 << 24;

/// Odd-characteristic fields up to this order get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 22;

/// Longest digit vector: a binary element of degree up to 63.
const MAX_DIGITS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u64,
    field: u64,
}

impl FieldElement {
    /// Polynomial-basis coordinates read as a base-`p` integer.
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl serde::Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&format_args!("{:#x}", self.value))
    }
}

impl fmt::LowerHex for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.value, f)
    }
}

#[derive(Debug)]
enum Kernel {
    Binary(gf2x::Reducer),
    Prime,
}

#[derive(Debug)]
struct Inner {
    id: u64,
    p: u64,
    n: u32,
    order: u64,
    /// Monic modulus, lowest degree first, length `n + 1`.
    modulus: Vec<u64>,
    kernel: Kernel,
    /// `Tr(x^i)` for each basis monomial.
    trace_basis: Vec<u64>,
    /// For `p = 2`: bit `i` set iff `Tr(x^i) = 1`.
    trace_mask: u64,
    tables: OnceLock<Option<LogTables>>,
}

/// An immutable finite field GF(p^n) with a fixed polynomial basis.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
    subfield: Option<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("descriptor", &self.descriptor())
            .field("subfield", &self.subfield)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id && self.subfield == other.subfield
    }
}

impl Eq for FieldCtx {}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

fn fingerprint(p: u64, n: u32, modulus: &[u64]) -> u64 {
    // FNV-1a over the defining data; stable across runs
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |w: u64| {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    eat(p);
    eat(n as u64);
    for &c in modulus {
        eat(c);
    }
    h
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power `q = p^s` into `(p, s)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut s = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        s += 1;
    }
    (r == 1 && is_prime(p)).then_some((p, s))
}

impl FieldCtx {
    /// Builds GF(p^n). Without a modulus, the lexicographically smallest monic
    /// irreducible of degree `n` is used.
    pub fn new(p: u64, n: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("characteristic {p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidField("degree must be at least 1".into()));
        }
        let order = p
            .checked_pow(n)
            .filter(|&o| o < 1 << 63)
            .ok_or_else(|| Error::InvalidField(format!("order {p}^{n} does not fit in 63 bits")))?;
        let modulus: Vec<u64> = match modulus {
            Some(m) => {
                let mut m = m.to_vec();
                fpx::trim(&mut m);
                if m.len() != n as usize + 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus has degree {}, expected {n}",
                        m.len().saturating_sub(1)
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField(format!("modulus coefficient not in [0, {p})")));
                }
                if m[n as usize] != 1 {
                    return Err(Error::InvalidField("modulus must be monic".into()));
                }
                let irreducible = if p == 2 {
                    gf2x::is_irreducible(bits_from_coeffs(&m))
                } else {
                    fpx::is_irreducible(&m, p)
                };
                if !irreducible {
                    return Err(Error::ReducibleModulus {
                        p,
                        modulus: format_modulus(p, &m),
                    });
                }
                m
            }
            None if p == 2 => {
                let bits = gf2x::smallest_irreducible(n)
                    .ok_or_else(|| Error::InvalidField(format!("no default modulus for degree {n}")))?;
                coeffs_from_bits(bits, n)
            }
            None => fpx::smallest_irreducible(p, n as usize)
                .ok_or_else(|| Error::InvalidField(format!("no default modulus for GF({p}^{n})")))?,
        };
        let kernel = if p == 2 {
            Kernel::Binary(gf2x::Reducer::new(bits_from_coeffs(&modulus)))
        } else {
            Kernel::Prime
        };
        let mut inner = Inner {
            id: fingerprint(p, n, &modulus),
            p,
            n,
            order,
            modulus,
            kernel,
            trace_basis: Vec::new(),
            trace_mask: 0,
            tables: OnceLock::new(),
        };
        let basis: Vec<u64> = (0..n).map(|i| p.pow(i)).collect();
        inner.trace_basis = basis.iter().map(|&b| inner.trace_by_frobenius(b)).collect();
        if p == 2 {
            inner.trace_mask = inner
                .trace_basis
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &t)| acc | (t << i));
        }
        Ok(FieldCtx {
            inner: Arc::new(inner),
            subfield: None,
        })
    }

    /// GF(2^n) with the table modulus.
    pub fn binary(n: u32) -> Result<Self> {
        Self::new(2, n, None)
    }

    /// GF(2^n) with the modulus given as a bit mask (bit `i` = coefficient of `x^i`).
    pub fn binary_with_modulus(mask: u64) -> Result<Self> {
        if mask < 2 {
            return Err(Error::InvalidField("modulus must have positive degree".into()));
        }
        let n = 63 - mask.leading_zeros();
        Self::new(2, n, Some(&coeffs_from_bits(mask, n)))
    }

    /// Marks GF(p^s) as the distinguished subfield (`q = p^s`); `s` must divide `n`.
    pub fn with_subfield(mut self, s: u32) -> Result<Self> {
        if s == 0 || !self.inner.n.is_multiple_of(s) {
            return Err(Error::InvalidField(format!(
                "subfield degree {s} does not divide {}",
                self.inner.n
            )));
        }
        // GF(p) itself is the implicit default
        self.subfield = (s > 1).then_some(s);
        Ok(self)
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.n
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// Monic modulus, lowest degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// Degree `s` of the distinguished subfield GF(q), `q = p^s`, when set.
    pub fn subfield_degree(&self) -> Option<u32> {
        self.subfield
    }

    /// `q` for the distinguished subfield (defaults to `p`).
    pub fn subfield_order(&self) -> u64 {
        self.inner.p.pow(self.subfield.unwrap_or(1))
    }

    /// Extension degree over the distinguished subfield (`m` with order `q^m`).
    pub fn relative_degree(&self) -> u32 {
        self.inner.n / self.subfield.unwrap_or(1)
    }

    pub fn exceeds_sweep_bound(&self) -> bool {
        self.inner.order > DEFAULT_SWEEP_BOUND
    }

    pub fn same_field(&self, other: &FieldCtx) -> bool {
        self.inner.id == other.inner.id
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value >= self.inner.order {
            return Err(Error::ElementOutOfRange {
                value,
                order: self.inner.order,
            });
        }
        Ok(self.wrap(value))
    }

    #[inline]
    pub(crate) fn wrap(&self, value: u64) -> FieldElement {
        debug_assert!(value < self.inner.order);
        FieldElement {
            value,
            field: self.inner.id,
        }
    }

    /// Element from its coefficient vector (lowest degree first).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.inner.n as usize || coeffs.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::InvalidArgument(format!(
                "coefficient vector {coeffs:?} does not describe an element of {}",
                self.descriptor()
            )));
        }
        let v = coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.inner.p + c);
        Ok(self.wrap(v))
    }

    pub fn coeffs(&self, a: FieldElement) -> Result<Vec<u64>> {
        let v = self.check(a)?;
        Ok(self.digits(v)[..self.inner.n as usize].to_vec())
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// Every element, in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.order).map(move |v| self.wrap(v))
    }

    #[inline]
    fn check(&self, a: FieldElement) -> Result<u64> {
        if a.field == self.inner.id {
            Ok(a.value)
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.add_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.sub_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.sub_raw(0, self.check(a)?)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.mul_raw(self.check(a)?, self.check(b)?)))
    }

    /// `a^e`. Negative exponents are folded modulo `order - 1` and need `a != 0`.
    pub fn pow(&self, a: FieldElement, e: i128) -> Result<FieldElement> {
        let v = self.check(a)?;
        if v == 0 {
            return if e > 0 { Ok(self.zero()) } else { Err(Error::ZeroPower(e)) };
        }
        let folded = e.rem_euclid(self.inner.order as i128 - 1) as u64;
        Ok(self.wrap(self.pow_raw(v, folded)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let v = self.check(a)?;
        if v == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.wrap(self.pow_raw(v, self.inner.order - 2)))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let inv = self.inv(b)?;
        self.mul(a, inv)
    }

    /// Absolute trace onto GF(p); the result is a constant of this field.
    pub fn trace(&self, a: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.trace_raw(self.check(a)?)))
    }

    /// `Tr(a) = a + a^p + ... + a^(p^(n-1))`, evaluated literally.
    pub fn trace_by_frobenius(&self, a: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.inner.trace_by_frobenius(self.check(a)?)))
    }

    /// `a^(p^j)`, with `j` taken modulo `n`.
    pub fn frobenius(&self, a: FieldElement, j: i64) -> Result<FieldElement> {
        let v = self.check(a)?;
        Ok(self.wrap(self.frobenius_raw(v, j)))
    }

    /// The involution `u -> u^(p^(n/2))`; needs even degree.
    pub fn bar(&self, a: FieldElement) -> Result<FieldElement> {
        if !self.inner.n.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "conjugation needs an even degree, field has degree {}",
                self.inner.n
            )));
        }
        self.frobenius(a, self.inner.n as i64 / 2)
    }

    /// Log/antilog tables over a fixed primitive element, built on first use.
    pub fn log_tables(&self) -> Result<&LogTables> {
        if self.inner.order > DEFAULT_SWEEP_BOUND {
            return Err(Error::TooLarge {
                order: self.inner.order,
                bound: DEFAULT_SWEEP_BOUND,
            });
        }
        Ok(self
            .inner
            .tables
            .get_or_init(|| Some(LogTables::build(&self.inner)))
            .as_ref()
            .expect("tables built"))
    }

    /// Smallest-index element generating the multiplicative group.
    pub fn primitive_element(&self) -> Result<FieldElement> {
        if self.inner.order > 1 << 40 {
            return Err(Error::TooLarge {
                order: self.inner.order,
                bound: 1 << 40,
            });
        }
        Ok(self.wrap(tables::primitive_element(&self.inner)))
    }

    // ---- unchecked kernels on element indices ----

    #[inline]
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        if self.inner.p == 2 {
            a ^ b
        } else {
            self.inner.digitwise(a, b, |x, y, p| (x + y) % p)
        }
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        if self.inner.p == 2 {
            a ^ b
        } else {
            self.inner.digitwise(a, b, |x, y, p| (x + p - y) % p)
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        match &self.inner.kernel {
            Kernel::Binary(red) => red.mul(a, b),
            Kernel::Prime => {
                if self.inner.order <= TABLE_LIMIT {
                    let t = self
                        .inner
                        .tables
                        .get_or_init(|| Some(LogTables::build(&self.inner)))
                        .as_ref()
                        .expect("tables built");
                    t.mul(a, b)
                } else {
                    self.inner.mul_schoolbook(a, b)
                }
            }
        }
    }

    /// `a^e` for a non-negative exponent; `0^0 = 1`.
    #[inline]
    pub(crate) fn pow_raw(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return u64::from(e == 0);
        }
        let e = if e == 0 { 0 } else { (e - 1) % (self.inner.order - 1) + 1 };
        match &self.inner.kernel {
            Kernel::Binary(red) => square_and_multiply(a, e, |x, y| red.mul(x, y)),
            Kernel::Prime if self.inner.order <= TABLE_LIMIT => {
                let t = self
                    .inner
                    .tables
                    .get_or_init(|| Some(LogTables::build(&self.inner)))
                    .as_ref()
                    .expect("tables built");
                t.pow(a, e)
            }
            Kernel::Prime => square_and_multiply(a, e, |x, y| self.inner.mul_schoolbook(x, y)),
        }
    }

    #[inline]
    pub(crate) fn trace_raw(&self, a: u64) -> u64 {
        if self.inner.p == 2 {
            ((a & self.inner.trace_mask).count_ones() & 1) as u64
        } else {
            let p = self.inner.p;
            let d = self.digits(a);
            self.inner
                .trace_basis
                .iter()
                .zip(d.iter())
                .fold(0u64, |acc, (&t, &c)| (acc + t * c) % p)
        }
    }

    pub(crate) fn frobenius_raw(&self, a: u64, j: i64) -> u64 {
        let j = j.rem_euclid(self.inner.n as i64) as u32;
        // p^j < p^n fits
        self.pow_raw(a, self.inner.p.pow(j))
    }

    fn digits(&self, v: u64) -> [u64; MAX_DIGITS] {
        self.inner.digits(v)
    }
}

#[inline]
pub(crate) fn square_and_multiply(mut base: u64, mut e: u64, mul: impl Fn(u64, u64) -> u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(base, base);
        }
    }
    acc
}

impl Inner {
    #[inline]
    fn digits(&self, mut v: u64) -> [u64; MAX_DIGITS] {
        let mut d = [0u64; MAX_DIGITS];
        let mut i = 0;
        while v > 0 {
            d[i] = v % self.p;
            v /= self.p;
            i += 1;
        }
        d
    }

    #[inline]
    fn encode(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    #[inline]
    fn digitwise(&self, a: u64, b: u64, op: impl Fn(u64, u64, u64) -> u64) -> u64 {
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.n {
            out += op(a % p, b % p, p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    fn mul_schoolbook(&self, a: u64, b: u64) -> u64 {
        if let Kernel::Binary(red) = &self.kernel {
            return red.mul(a, b);
        }
        let p = self.p;
        let n = self.n as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = [0u64; 2 * MAX_DIGITS];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        // monic modulus: x^n = -(m_0 + ... + m_{n-1} x^{n-1})
        for top in (n..2 * n - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for j in 0..n {
                let t = c * self.modulus[j] % p;
                prod[top - n + j] = (prod[top - n + j] + p - t) % p;
            }
        }
        self.encode(&prod[..n])
    }

    fn pow_schoolbook(&self, a: u64, e: u64) -> u64 {
        square_and_multiply(a, e, |x, y| self.mul_schoolbook(x, y))
    }

    fn add_generic(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            a ^ b
        } else {
            self.digitwise(a, b, |x, y, p| (x + y) % p)
        }
    }

    fn trace_by_frobenius(&self, a: u64) -> u64 {
        let mut acc = 0u64;
        let mut term = a;
        for _ in 0..self.n {
            acc = self.add_generic(acc, term);
            term = self.pow_schoolbook(term, self.p);
        }
        debug_assert!(acc < self.p, "trace must land in the prime field");
        acc
    }
}

pub(crate) fn bits_from_coeffs(c: &[u64]) -> u64 {
    c.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | ((b & 1) << i))
}

pub(crate) fn coeffs_from_bits(bits: u64, n: u32) -> Vec<u64> {
    (0..=n).map(|i| (bits >> i) & 1).collect()
}

pub(crate) fn format_modulus(p: u64, m: &[u64]) -> String {
    if p == 2 {
        format!("{:#x}", bits_from_coeffs(m))
    } else {
        let parts: Vec<String> = m.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

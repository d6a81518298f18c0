//! Text forms of fields and elements.
//!
//! Fields: `gf:p=2,n=7,mod=0x83` (bit `i` of the mask is the coefficient of
//! `x^i`) or `gf:p=3,n=2,mod=[1,0,1]` (coefficients lowest degree first).
//! Omitting `mod` selects the default modulus.
//!
//! Elements: `0x..` hex of the element index (for `p = 2` the coefficient bit
//! mask), a plain decimal index, or `[c0,c1,...]` coefficients.

use super::{bits_from_coeffs, coeffs_from_bits, format_modulus, FieldCtx, FieldElement};
use crate::error::{Error, Result};

/// Splits `k=v,k=v` on commas outside brackets.
pub(crate) fn split_pairs(body: &str) -> Result<Vec<(&str, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = body.as_bytes();
    for i in 0..=bytes.len() {
        let at_end = i == bytes.len();
        if !at_end {
            match bytes[i] {
                b'[' => depth += 1,
                b']' => depth -= 1,
                _ => {}
            }
        }
        if at_end || (bytes[i] == b',' && depth == 0) {
            let piece = body[start..i].trim();
            start = i + 1;
            if piece.is_empty() {
                if at_end && out.is_empty() {
                    break;
                }
                return Err(Error::Parse(format!("empty parameter in '{body}'")));
            }
            let (k, v) = piece
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, found '{piece}'")))?;
            out.push((k.trim(), v.trim()));
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in '{body}'")));
    }
    Ok(out)
}

pub(crate) fn parse_u64(s: &str) -> Result<u64> {
    let s = s.trim();
    let parsed = if let Some(h) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        u64::from_str_radix(h, 16)
    } else if let Some(b) = s.strip_prefix("0b") {
        u64::from_str_radix(b, 2)
    } else {
        s.parse()
    };
    parsed.map_err(|_| Error::Parse(format!("not an integer: '{s}'")))
}

fn parse_list(s: &str) -> Result<Vec<u64>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..] list, found '{s}'")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_u64).collect()
}

impl FieldCtx {
    /// Parses a field descriptor.
    pub fn from_descriptor(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix("gf:")
            .ok_or_else(|| Error::Parse(format!("field descriptor must start with 'gf:': '{s}'")))?;
        let mut p = None;
        let mut n = None;
        let mut modulus = None;
        for (k, v) in split_pairs(body)? {
            match k {
                "p" => p = Some(parse_u64(v)?),
                "n" => n = Some(parse_u64(v)?),
                "mod" => modulus = Some(v),
                other => return Err(Error::Parse(format!("unknown field parameter '{other}'"))),
            }
        }
        let p = p.ok_or_else(|| Error::Parse("field descriptor needs p".into()))?;
        let n = n.ok_or_else(|| Error::Parse("field descriptor needs n".into()))?;
        let n = u32::try_from(n).map_err(|_| Error::Parse(format!("degree {n} too large")))?;
        let coeffs = match modulus {
            None => None,
            Some(m) if m.starts_with('[') => Some(parse_list(m)?),
            Some(m) => {
                let bits = parse_u64(m)?;
                if p != 2 {
                    return Err(Error::Parse(format!(
                        "bit-mask modulus needs p = 2; use a coefficient list for p = {p}"
                    )));
                }
                if bits < 2 || 63 - bits.leading_zeros() != n {
                    return Err(Error::InvalidField(format!("modulus {m} does not have degree {n}")));
                }
                Some(coeffs_from_bits(bits, n))
            }
        };
        FieldCtx::new(p, n, coeffs.as_deref())
    }

    /// Canonical descriptor, always naming the modulus.
    pub fn descriptor(&self) -> String {
        format!(
            "gf:p={},n={},mod={}",
            self.characteristic(),
            self.degree(),
            format_modulus(self.characteristic(), self.modulus())
        )
    }

    /// Binary modulus as a bit mask (`None` in odd characteristic).
    pub fn modulus_mask(&self) -> Option<u64> {
        (self.characteristic() == 2).then(|| bits_from_coeffs(self.modulus()))
    }

    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        if s.starts_with('[') {
            return self.from_coeffs(&parse_list(s)?);
        }
        self.element(parse_u64(s)?)
    }

    pub fn format_element(&self, a: FieldElement) -> String {
        format!("{:#x}", a.value())
    }
}

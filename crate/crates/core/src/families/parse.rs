//! Instance strings: `T33:q=2,k=3,m=6`, `T21:m=7`, `K5:k=2,m=6,a=0x5`,
//! `C35:m=8,reading=cff`.

use std::str::FromStr;

use super::{FamilyId, FamilyInstance, Reading};
use crate::error::{Error, Result};
use crate::galois::{parse_u64, split_pairs};

impl FromStr for FamilyInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (tag, body) = s.split_once(':').unwrap_or((s, ""));
        let family = FamilyId::from_tag(tag.trim())
            .ok_or_else(|| Error::Parse(format!("unknown family '{tag}'")))?;
        let mut m = None;
        let mut inst = FamilyInstance::new(family, 0);
        for (key, value) in split_pairs(body)? {
            match key {
                "m" => {
                    let v = parse_u64(value)?;
                    m = Some(u32::try_from(v).map_err(|_| Error::Parse(format!("m = {v} too large")))?);
                }
                "q" => inst.q = parse_u64(value)?,
                "k" => inst.k = Some(parse_u64(value)?),
                "a" => inst.a = Some(parse_u64(value)?),
                "reading" => inst.reading = Some(Reading::parse(value)?),
                other => return Err(Error::Parse(format!("unknown parameter '{other}' in '{s}'"))),
            }
        }
        if m.is_none() && family == FamilyId::K5 {
            m = inst.k.and_then(|k| u32::try_from(3 * k).ok());
        }
        inst.m = m.ok_or_else(|| Error::Parse(format!("instance '{s}' needs m")))?;
        Ok(inst)
    }
}

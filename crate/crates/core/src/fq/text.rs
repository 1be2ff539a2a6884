//! Polynomial text format `c0,c1,...,cn@q`, lowest coefficient first.
//!
//! Only canonical strings are accepted, so parsing and formatting are
//! mutually inverse: coefficients are reduced decimal residues without
//! leading zeros, the top coefficient is nonzero, and the zero polynomial
//! is written `0@q`.

use std::fmt;
use std::str::FromStr;

use super::field::FieldParams;
use super::poly::Poly;
use crate::error::Error;

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0@{}", self.field().q());
        }
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "@{}", self.field().q())
    }
}

fn parse_canonical_u32(s: &str, what: &str) -> Result<u32, Error> {
    let bad = || Error::Parse(format!("invalid {what} {s:?}"));
    if s.is_empty() || s.len() > 10 || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if s.len() > 1 && s.starts_with('0') {
        return Err(bad());
    }
    s.parse::<u32>().map_err(|_| bad())
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (body, modulus) = s
            .split_once('@')
            .ok_or_else(|| Error::Parse(format!("missing '@q' in {s:?}")))?;
        let q = parse_canonical_u32(modulus, "modulus")?;
        let field = FieldParams::new(q).map_err(|e| Error::Parse(e.to_string()))?;
        let mut coeffs = Vec::new();
        for part in body.split(',') {
            let c = parse_canonical_u32(part, "coefficient")?;
            if c >= q {
                return Err(Error::Parse(format!("coefficient {c} is not reduced mod {q}")));
            }
            coeffs.push(c);
        }
        if coeffs == [0] {
            return Ok(Poly::zero(field));
        }
        if coeffs.last() == Some(&0) {
            return Err(Error::Parse(format!("trailing zero coefficient in {s:?}")));
        }
        Ok(Poly::from_reduced(field, coeffs))
    }
}

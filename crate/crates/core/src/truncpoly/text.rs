//! Textual polynomial literals.
//!
//! One variable: `c0 + c1*x^1 + c2*x^2 ...` (terms may also be written `x`,
//! `x^3`, `-4*x^2`). Several variables: a JSON object
//! `{"[e1,e2]": "coeff", ...}` with decimal-string coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{RingShape, TruncPoly};
use crate::error::{Error, Result};

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let multi = self.shape().num_vars() > 1;
        for (idx, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{mag}")?;
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if multi {
                    write!(f, "*x{}^{}", i + 1, k)?;
                } else {
                    write!(f, "*x^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Parses a one-variable literal into the given shape.
pub fn parse_univariate(src: &str, shape: &RingShape) -> Result<TruncPoly> {
    if shape.num_vars() != 1 {
        return Err(Error::Parse("univariate literal needs a one-variable shape".into()));
    }
    let chars: Vec<char> = src.chars().collect();
    for (i, w) in chars.windows(3).enumerate() {
        if w[1].is_whitespace() && w[0].is_alphanumeric() {
            if let Some(next) = chars[i + 1..].iter().find(|c| !c.is_whitespace()) {
                if next.is_alphanumeric() {
                    return Err(Error::Parse(format!("missing operator near offset {}", i + 1)));
                }
            }
        }
    }
    let s: String = chars.into_iter().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bytes = s.as_bytes();
    let mut pos = 0;
    let mut terms: Vec<(u32, BigInt)> = Vec::new();
    while pos < bytes.len() {
        let mut sign = BigInt::one();
        let mut saw_sign = false;
        while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            saw_sign = true;
            pos += 1;
        }
        if !saw_sign && !terms.is_empty() {
            return Err(Error::Parse(format!("expected '+' or '-' at offset {pos}")));
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let coeff: BigInt = if pos > start {
            s[start..pos].parse().expect("digits")
        } else {
            BigInt::one()
        };
        let had_coeff = pos > start;
        let mut exp = 0u32;
        if had_coeff && pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
            if pos >= bytes.len() || bytes[pos] != b'x' {
                return Err(Error::Parse(format!("expected 'x' at offset {pos}")));
            }
        }
        if pos < bytes.len() && bytes[pos] == b'x' {
            pos += 1;
            exp = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let es = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if es == pos {
                    return Err(Error::Parse(format!("missing exponent at offset {es}")));
                }
                exp = s[es..pos]
                    .parse()
                    .map_err(|_| Error::Parse("exponent too large".into()))?;
            }
        } else if !had_coeff {
            return Err(Error::Parse(format!("expected a term at offset {start}")));
        }
        terms.push((exp, sign * coeff));
    }
    let bound = shape.bound(0);
    let mut p = TruncPoly::zero(shape);
    for (e, c) in terms {
        if e < bound {
            p.add_term(vec![e], c);
        }
    }
    Ok(p)
}

/// JSON object form `{"[e1,e2]": "coeff"}` of a polynomial.
pub type MultiPolyJson = BTreeMap<String, String>;

impl TruncPoly {
    pub fn to_json_map(&self) -> MultiPolyJson {
        self.terms()
            .map(|(e, c)| {
                let key = format!("[{}]", e.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","));
                (key, c.to_string())
            })
            .collect()
    }

    pub fn from_json_map(map: &MultiPolyJson, shape: &RingShape) -> Result<TruncPoly> {
        let mut terms = Vec::with_capacity(map.len());
        for (k, v) in map {
            let inner = k
                .trim()
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad exponent key {k:?}")))?;
            let e: Vec<u32> = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|t| t.trim().parse::<u32>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse(format!("bad exponent key {k:?}")))?
            };
            let c: BigInt = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {v:?}")))?;
            terms.push((e, c));
        }
        TruncPoly::from_terms(shape, terms)
    }
}

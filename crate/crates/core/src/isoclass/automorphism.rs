use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::truncpoly::{RingShape, TruncPoly};

/// Filtered automorphism `x -> u x + a_2 x^2 + .. + a_{n-1} x^{n-1}` of
/// `Z[x]/(x^n)`, `u = +-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    shape: RingShape,
    u: i8,
    /// `a_2, .., a_{n-1}`; always `n - 2` entries.
    higher: Vec<BigInt>,
}

impl Automorphism {
    pub fn new(shape: &RingShape, u: i8, higher: Vec<BigInt>) -> Result<Self> {
        let n = shape
            .univariate_bound()
            .ok_or_else(|| Error::InvalidShape("automorphisms need one variable".into()))?;
        if u != 1 && u != -1 {
            return Err(Error::NotAUnit { coeff: BigInt::from(u) });
        }
        let len = n.saturating_sub(2) as usize;
        let mut higher = higher;
        if higher[len.min(higher.len())..].iter().any(|a| !a.is_zero()) {
            return Err(Error::ExponentOutOfRange {
                exponent: vec![higher.len() as u32 + 1],
            });
        }
        higher.resize(len, BigInt::zero());
        Ok(Automorphism {
            shape: shape.clone(),
            u,
            higher,
        })
    }

    pub fn identity(shape: &RingShape) -> Result<Self> {
        Self::new(shape, 1, Vec::new())
    }

    /// Reads `sigma(x)` off a polynomial with zero constant term and linear
    /// coefficient `+-1`.
    pub fn from_poly(f: &TruncPoly) -> Result<Self> {
        let n = f
            .shape()
            .univariate_bound()
            .ok_or_else(|| Error::InvalidShape("automorphisms need one variable".into()))?;
        if !f.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm { index: 0 });
        }
        let lin = f.coeff(1);
        let u = if lin.is_one() {
            1
        } else if lin == -BigInt::one() {
            -1
        } else {
            return Err(Error::NotAUnit { coeff: lin });
        };
        Self::new(f.shape(), u, (2..n).map(|k| f.coeff(k)).collect())
    }

    pub fn shape(&self) -> &RingShape {
        &self.shape
    }

    pub fn u(&self) -> i8 {
        self.u
    }

    /// `a_2, .., a_{n-1}`.
    pub fn higher(&self) -> &[BigInt] {
        &self.higher
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: u32) -> BigInt {
        match k {
            0 => BigInt::zero(),
            1 => BigInt::from(self.u),
            _ => self.higher.get(k as usize - 2).cloned().unwrap_or_default(),
        }
    }

    pub fn as_poly(&self) -> TruncPoly {
        let mut coeffs = vec![BigInt::zero(), BigInt::from(self.u)];
        coeffs.extend(self.higher.iter().cloned());
        TruncPoly::univariate_in(&self.shape, coeffs)
    }

    pub fn inverse(&self) -> Self {
        let inv = self.as_poly().comp_inverse().expect("linear coefficient is a unit");
        Self::from_poly(&inv).expect("inverse of an automorphism")
    }

    /// `self(other(x))`.
    pub fn then_inner(&self, other: &Automorphism) -> Result<Self> {
        Self::from_poly(&self.as_poly().compose1(&other.as_poly())?)
    }

    /// The same coefficients in a larger (or smaller) truncation.
    pub fn in_shape(&self, shape: &RingShape) -> Result<Self> {
        let n = shape
            .univariate_bound()
            .ok_or_else(|| Error::InvalidShape("automorphisms need one variable".into()))?;
        let keep = n.saturating_sub(2) as usize;
        Self::new(shape, self.u, self.higher.iter().take(keep).cloned().collect())
    }

    /// `{"u": 1, "coeffs": ["a2", .., "a_{n-1}"]}`
    pub fn to_json(&self) -> Value {
        json!({
            "u": self.u,
            "coeffs": self.higher.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value, shape: &RingShape) -> Result<Self> {
        let u = v
            .get("u")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Parse("automorphism needs integer \"u\"".into()))?;
        let coeffs = match v.get("coeffs") {
            None => Vec::new(),
            Some(Value::Array(a)) => a
                .iter()
                .map(|c| match c {
                    Value::String(s) => s
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad coefficient {s:?}"))),
                    Value::Number(n) => n
                        .to_string()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad coefficient {n}"))),
                    _ => Err(Error::Parse("coefficients must be strings".into())),
                })
                .collect::<Result<_>>()?,
            Some(_) => return Err(Error::Parse("\"coeffs\" must be an array".into())),
        };
        let u = i8::try_from(u).map_err(|_| Error::NotAUnit { coeff: BigInt::from(u) })?;
        Self::new(shape, u, coeffs)
    }
}

impl std::fmt::Display for Automorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::exact_div;
use crate::error::{Error, Result};

/// `numerator(p) / denominator`, where the numerator is an integer polynomial
/// in the prime `p` and the quotient must come out integral at every prime
/// the family is used with.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoeffRule {
    /// Coefficients of `p^0, p^1, ..`; no trailing zeros.
    numerator: Vec<BigInt>,
    denominator: BigInt,
}

impl CoeffRule {
    pub fn new(mut numerator: Vec<BigInt>, denominator: BigInt) -> Result<Self> {
        if !denominator.is_positive() {
            return Err(Error::Parse(format!("denominator {denominator} must be positive")));
        }
        while numerator.last().is_some_and(|c| c.is_zero()) {
            numerator.pop();
        }
        Ok(CoeffRule { numerator, denominator })
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()], BigInt::one()).expect("positive denominator")
    }

    /// `c * p^k`.
    pub fn power(c: impl Into<BigInt>, k: usize) -> Self {
        let mut num = vec![BigInt::zero(); k + 1];
        num[k] = c.into();
        Self::new(num, BigInt::one()).expect("positive denominator")
    }

    /// `binom(p, j) = p (p-1) .. (p-j+1) / j!`.
    pub fn binomial_in_p(j: u32) -> Self {
        let mut num = vec![BigInt::one()];
        let mut den = BigInt::one();
        for i in 0..j {
            num = poly_mul(&num, &[-BigInt::from(i), BigInt::one()]);
            den *= BigInt::from(i + 1);
        }
        Self::new(num, den).expect("positive denominator")
    }

    /// `self * other`, in lowest terms.
    pub fn product(&self, other: &CoeffRule) -> CoeffRule {
        Self::reduced(
            poly_mul(&self.numerator, &other.numerator),
            &self.denominator * &other.denominator,
        )
    }

    /// `self - other`, in lowest terms.
    pub fn difference(&self, other: &CoeffRule) -> CoeffRule {
        let a = poly_mul(&self.numerator, std::slice::from_ref(&other.denominator));
        let b = poly_mul(&other.numerator, std::slice::from_ref(&self.denominator));
        Self::reduced(poly_add(&a, &b, -1), &self.denominator * &other.denominator)
    }

    /// `self * num / den`, in lowest terms; `den > 0`.
    pub fn scaled(&self, num: &BigInt, den: &BigInt) -> CoeffRule {
        Self::reduced(
            poly_mul(&self.numerator, std::slice::from_ref(num)),
            &self.denominator * den,
        )
    }

    fn reduced(numerator: Vec<BigInt>, denominator: BigInt) -> CoeffRule {
        let g = numerator.iter().fold(denominator.clone(), |g, c| g.gcd(c));
        let numerator = numerator.into_iter().map(|c| c / &g).collect();
        Self::new(numerator, denominator / g).expect("positive denominator")
    }

    /// Parses an expression in `p` (integers, `p`, `+ - * ^`, parentheses)
    /// over a positive denominator.
    pub fn parse(numerator: &str, denominator: &BigInt) -> Result<Self> {
        let num = ExprParser::new(numerator).parse_all()?;
        Self::new(num, denominator.clone())
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn numerator_string(&self) -> String {
        format_poly_in_p(&self.numerator)
    }

    pub fn eval_numerator(&self, p: u64) -> BigInt {
        let p = BigInt::from(p);
        self.numerator.iter().rev().fold(BigInt::zero(), |acc, c| acc * &p + c)
    }

    pub fn eval(&self, p: u64) -> Result<BigInt> {
        exact_div(&self.eval_numerator(p), &self.denominator).ok_or_else(|| Error::NonIntegralRule {
            rule: self.to_string(),
            prime: p,
        })
    }
}

impl fmt::Display for CoeffRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator_string())
        } else {
            write!(f, "({})/{}", self.numerator_string(), self.denominator)
        }
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[BigInt], b: &[BigInt], sign: i32) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            if sign < 0 {
                x - y
            } else {
                x + y
            }
        })
        .collect()
}

/// Canonical expanded form, highest power first: `p^4 - p^2`, `3*p + 1`.
fn format_poly_in_p(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let var = match k {
            0 => String::new(),
            1 => "p".to_string(),
            _ => format!("p^{k}"),
        };
        if k == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{mag}*{var}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn new(s: &'a str) -> Self {
        ExprParser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<Vec<BigInt>> {
        let v = self.expr()?;
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<Vec<BigInt>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = poly_add(&acc, &t, 1);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = poly_add(&acc, &t, -1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Vec<BigInt>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = poly_mul(&acc, &f);
                }
                // implicit product: `2p`, `3(p-1)`, `(p+1)(p-1)`
                Some(b'p') | Some(b'(') => {
                    let f = self.factor()?;
                    acc = poly_mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Vec<BigInt>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected exponent"));
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            let mut out = vec![BigInt::one()];
            for _ in 0..e {
                out = poly_mul(&out, &base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Vec<BigInt>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let a = self.factor()?;
                Ok(a.into_iter().map(|c| -c).collect())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            Some(b'p') => {
                self.pos += 1;
                Ok(vec![BigInt::zero(), BigInt::one()])
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .unwrap();
                Ok(vec![n])
            }
            _ => Err(self.err("expected a number, 'p' or '('")),
        }
    }
}

/// Parses a plain integer polynomial in `p` (no denominator).
pub fn parse_poly_in_p(s: &str) -> Result<Vec<BigInt>> {
    let mut v = ExprParser::new(s).parse_all()?;
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    Ok(v)
}

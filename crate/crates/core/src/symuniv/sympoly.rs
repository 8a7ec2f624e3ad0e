use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::truncpoly::TruncPoly;

/// Integer polynomial in named variables, no truncation.
///
/// Monomials are exponent vectors over `vars`; the lexicographic order on
/// them (earlier variables dominate) is the term order, so the last key of
/// the map is the leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl SymPoly {
    pub fn zero(vars: &[String]) -> Self {
        SymPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c.into());
        p
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, 1)
    }

    pub fn var(vars: &[String], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, BigInt::one());
        p
    }

    pub fn monomial(vars: &[String], exponent: Vec<u32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exponent.len(), vars.len());
        let mut p = Self::zero(vars);
        p.add_term(exponent, c.into());
        p
    }

    pub(crate) fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, exponent: &[u32]) -> BigInt {
        self.terms.get(exponent).cloned().unwrap_or_default()
    }

    /// Coefficient of the monomial given as `(name, exponent)` pairs.
    pub fn coefficient_named(&self, monomial: &[(&str, u32)]) -> BigInt {
        let mut e = vec![0; self.vars.len()];
        for (name, k) in monomial {
            match self.vars.iter().position(|v| v == name) {
                Some(i) => e[i] = *k,
                None => return BigInt::zero(),
            }
        }
        self.coefficient(&e)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Re-expresses the polynomial over a variable list containing all of its
    /// variables (matched by name).
    pub fn with_vars(&self, vars: &[String]) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::Parse(format!("variable {v} missing from target list")))
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Swaps variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.swap(i, j);
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Invariance under every adjacent transposition within `group`.
    pub fn is_symmetric_in(&self, group: &[usize]) -> bool {
        group.windows(2).all(|w| self.swap_vars(w[0], w[1]) == *self)
    }

    /// Substitutes `values[i]` for variable `i`; all values share one variable list.
    pub fn substitute(&self, values: &[SymPoly]) -> Result<SymPoly> {
        if values.len() != self.vars.len() {
            return Err(Error::IndexOutOfRange {
                index: values.len(),
                max: self.vars.len(),
            });
        }
        let target = values.first().map(|v| v.vars.clone()).unwrap_or_default();
        let mut cache: Vec<Vec<SymPoly>> = values.iter().map(|v| vec![Self::one(&v.vars)]).collect();
        let mut out = Self::zero(&target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap() * &values[i];
                    cache[i].push(next);
                }
                term = &term * &cache[i][k as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates at ring elements of a truncated polynomial ring.
    pub fn eval_truncpoly(&self, values: &[TruncPoly]) -> Result<TruncPoly> {
        if values.len() != self.vars.len() {
            return Err(Error::IndexOutOfRange {
                index: values.len(),
                max: self.vars.len(),
            });
        }
        let shape = values
            .first()
            .map(|v| v.shape().clone())
            .ok_or(Error::IndexOutOfRange { index: 0, max: 0 })?;
        let mut out = TruncPoly::zero(&shape);
        for (e, c) in &self.terms {
            let mut term = TruncPoly::constant(&shape, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.try_mul(&values[i].pow(k))?;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> SymPolyJson {
        let poly = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| SymTermJson {
                coeff: c.to_string(),
                monomial: e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| (self.vars[i].clone(), k))
                    .collect(),
            })
            .collect();
        SymPolyJson { poly }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymTermJson {
    pub coeff: String,
    pub monomial: BTreeMap<String, u32>,
}

/// `{"poly": [{"coeff": "...", "monomial": {"s1": 2, "sigma2": 1}}, ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymPolyJson {
    pub poly: Vec<SymTermJson>,
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let is_const = e.iter().all(|&k| k == 0);
            if !mag.is_one() || is_const {
                write!(f, "{mag}")?;
            }
            let mut first = mag.is_one() && !is_const;
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.vars[i])?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

fn same_vars(a: &SymPoly, b: &SymPoly) {
    assert_eq!(a.vars, b.vars, "SymPoly variable lists differ");
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        same_vars(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        same_vars(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        same_vars(self, rhs);
        let mut out = SymPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        self.scale(&-BigInt::one())
    }
}

/// `["x1", .., "xn"]`-style variable names.
pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

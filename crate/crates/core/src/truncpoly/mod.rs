//! Exact arithmetic in `Z[x_1..x_m]/(x_1^{r_1}..x_m^{r_m})`.
//!
//! Polynomials are sparse maps from exponent vectors to big integers and are
//! kept in canonical form (no zero coefficients, nothing at or above a
//! truncation bound), so equality is map equality.
//!
//! Composition follows one convention throughout the crate:
//! `f.compose(&[g])` is `f(g(x))`.

mod compose;
mod shape;
mod text;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use shape::{RingShape, Truncation};
pub use text::{parse_univariate, MultiPolyJson};

pub type Exponent = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    shape: Arc<RingShape>,
    coeffs: BTreeMap<Exponent, BigInt>,
}

impl TruncPoly {
    pub fn zero(shape: &RingShape) -> Self {
        TruncPoly {
            shape: Arc::new(shape.clone()),
            coeffs: BTreeMap::new(),
        }
    }

    fn empty_like(&self) -> Self {
        TruncPoly {
            shape: Arc::clone(&self.shape),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(shape: &RingShape, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(shape);
        p.add_term(vec![0; shape.num_vars()], c.into());
        p
    }

    pub fn one(shape: &RingShape) -> Self {
        Self::constant(shape, 1)
    }

    /// The generator `x_var`.
    pub fn var(shape: &RingShape, var: usize) -> Self {
        let mut e = vec![0; shape.num_vars()];
        e[var] = 1;
        let mut p = Self::zero(shape);
        p.add_term(e, BigInt::one());
        p
    }

    pub fn monomial(shape: &RingShape, exponent: Exponent, c: impl Into<BigInt>) -> Result<Self> {
        Self::from_terms(shape, [(exponent, c.into())])
    }

    /// Builds a polynomial from terms; repeated exponents are summed.
    pub fn from_terms(shape: &RingShape, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(shape);
        for (e, c) in terms {
            if !shape.contains(&e) {
                return Err(Error::ExponentOutOfRange { exponent: e });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// `c_0 + c_1 x + ...` in `Z[x]/(x^r)`; coefficients at or past `r` are dropped.
    pub fn univariate<I, C>(r: u32, coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        Self::univariate_in(&RingShape::univariate(r), coeffs)
    }

    /// Like [`TruncPoly::univariate`] for an arbitrary one-variable shape.
    pub fn univariate_in<I, C>(shape: &RingShape, coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        assert_eq!(shape.num_vars(), 1, "univariate constructor on multivariate shape");
        let bound = shape.bound(0);
        let mut p = Self::zero(shape);
        for (k, c) in coeffs.into_iter().enumerate() {
            if (k as u32) < bound {
                p.add_term(vec![k as u32], c.into());
            }
        }
        p
    }

    /// Adds `c * x^e` in place. Out-of-range exponents are silently dropped.
    pub(crate) fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() || !self.shape.contains(&e) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(e) {
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

    pub fn shape(&self) -> &RingShape {
        &self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, exponent: &[u32]) -> Result<BigInt> {
        if !self.shape.contains(exponent) {
            return Err(Error::ExponentOutOfRange {
                exponent: exponent.to_vec(),
            });
        }
        Ok(self.coeffs.get(exponent).cloned().unwrap_or_default())
    }

    /// Coefficient of `x^k` in a one-variable polynomial, zero when `k` is past the bound.
    pub fn coeff(&self, k: u32) -> BigInt {
        debug_assert_eq!(self.shape.num_vars(), 1);
        self.coeffs.get(&vec![k]).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeffs
            .get(&vec![0; self.shape.num_vars()])
            .cloned()
            .unwrap_or_default()
    }

    /// `d` times the least total degree of a nonzero monomial; `None` for zero (+infinity).
    pub fn filtration_valuation(&self) -> Option<u64> {
        self.coeffs
            .keys()
            .map(|e| e.iter().map(|&k| k as u64).sum::<u64>())
            .min()
            .map(|deg| deg * self.shape.filtration() as u64)
    }

    /// Highest exponent of a one-variable polynomial, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().map(|e| e[0])
    }

    /// Dense coefficient list `[c_0, .., c_{r-1}]` of a one-variable polynomial.
    pub fn dense(&self) -> Vec<BigInt> {
        let r = self.shape.bound(0);
        (0..r).map(|k| self.coeff(k)).collect()
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.shape == other.shape {
            Ok(())
        } else {
            Err(Error::ShapeMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    /// Schoolbook product; monomials reaching a truncation bound are never formed.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.empty_like();
        let mut e = vec![0u32; self.shape.num_vars()];
        for (ea, ca) in &self.coeffs {
            'inner: for (eb, cb) in &other.coeffs {
                for (i, slot) in e.iter_mut().enumerate() {
                    *slot = ea[i] + eb[i];
                    if *slot >= self.shape.bound(i) {
                        continue 'inner;
                    }
                }
                out.add_term(e.clone(), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return self.empty_like();
        }
        TruncPoly {
            shape: Arc::clone(&self.shape),
            coeffs: self.coeffs.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = TruncPoly::one(&self.shape);
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

    /// Coefficients reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> ModPoly {
        assert!(*m >= BigInt::from(2), "modulus must be at least 2");
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(e, c)| {
                let r = c.mod_floor(m);
                (!r.is_zero()).then(|| (e.clone(), r))
            })
            .collect();
        ModPoly {
            modulus: m.clone(),
            coeffs,
        }
    }

    /// Image in a shape with the same variables and smaller-or-equal bounds.
    pub fn truncate_to(&self, shape: &RingShape) -> Result<Self> {
        if shape.num_vars() != self.shape.num_vars() {
            return Err(Error::ShapeMismatch);
        }
        let mut out = TruncPoly::zero(shape);
        for (e, c) in &self.coeffs {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// The same coefficients read in a larger shape (the `x^r` term is zero there).
    pub fn embed_in(&self, shape: &RingShape) -> Result<Self> {
        if shape.num_vars() != self.shape.num_vars() {
            return Err(Error::ShapeMismatch);
        }
        for e in self.coeffs.keys() {
            if !shape.contains(e) {
                return Err(Error::ExponentOutOfRange { exponent: e.clone() });
            }
        }
        Ok(TruncPoly {
            shape: Arc::new(shape.clone()),
            coeffs: self.coeffs.clone(),
        })
    }

    /// First exponent (lexicographically) where the two polynomials differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Exponent, BigInt, BigInt)> {
        let mut keys: Vec<&Exponent> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|e| {
            let a = self.coeffs.get(e).cloned().unwrap_or_default();
            let b = other.coeffs.get(e).cloned().unwrap_or_default();
            (a != b).then(|| (e.clone(), a, b))
        })
    }

    /// Largest absolute coefficient, zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

/// A polynomial whose coefficients live in `Z/m`, stored reduced into `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    pub modulus: BigInt,
    pub coeffs: BTreeMap<Exponent, BigInt>,
}

impl ModPoly {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn first_term(&self) -> Option<(&Exponent, &BigInt)> {
        self.coeffs.iter().next()
    }
}

impl Add for &TruncPoly {
    type Output = TruncPoly;
    fn add(self, rhs: &TruncPoly) -> TruncPoly {
        self.try_add(rhs).expect("shape mismatch in add")
    }
}

impl Sub for &TruncPoly {
    type Output = TruncPoly;
    fn sub(self, rhs: &TruncPoly) -> TruncPoly {
        self.try_sub(rhs).expect("shape mismatch in sub")
    }
}

impl Mul for &TruncPoly {
    type Output = TruncPoly;
    fn mul(self, rhs: &TruncPoly) -> TruncPoly {
        self.try_mul(rhs).expect("shape mismatch in mul")
    }
}

impl Neg for &TruncPoly {
    type Output = TruncPoly;
    fn neg(self) -> TruncPoly {
        TruncPoly {
            shape: Arc::clone(&self.shape),
            coeffs: self.coeffs.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    #[test]
    fn additive_inverse() {
        let x = TruncPoly::univariate(3, [0, 1]);
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn add_collects_terms() {
        let f = TruncPoly::univariate(3, [0, 1, 1]);
        let g = TruncPoly::univariate(3, [0, 0, 1]);
        assert_eq!(&f + &g, TruncPoly::univariate(3, [0, 1, 2]));
    }

    #[test]
    fn add_does_not_overflow() {
        let two64 = big("18446744073709551616");
        let f = TruncPoly::univariate(3, [BigInt::zero(), BigInt::zero(), two64.clone()]);
        let sum = &f + &f;
        assert_eq!(sum.coeff(2), big("36893488147419103232"));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let f = TruncPoly::univariate(3, [0, 1]);
        let g = TruncPoly::univariate(4, [0, 1]);
        assert_eq!(f.try_add(&g), Err(Error::ShapeMismatch));
        assert_eq!(f.try_mul(&g), Err(Error::ShapeMismatch));
    }

    #[test]
    fn mul_examples() {
        let x = TruncPoly::univariate(2, [0, 1]);
        assert!((&x * &x).is_zero());
        let a = TruncPoly::univariate(3, [1, 1]);
        assert_eq!(&a * &a, TruncPoly::univariate(3, [1, 2, 1]));
        let b = TruncPoly::univariate(4, [0, 1, 1]);
        assert_eq!(&b * &b, TruncPoly::univariate(4, [0, 0, 1, 2]));
    }

    #[test]
    fn reduce_mod_examples() {
        let m2 = BigInt::from(2);
        let f = &TruncPoly::univariate(3, [1, 1]).pow(2) - &TruncPoly::univariate(3, [1]);
        let r = f.reduce_mod(&m2);
        assert_eq!(r.coeffs.len(), 1);
        assert_eq!(r.coeffs[&vec![2]], BigInt::one());

        let g = TruncPoly::univariate(4, [0, 3, 3, 1]);
        let r = g.reduce_mod(&BigInt::from(3));
        assert_eq!(r.coeffs.keys().collect::<Vec<_>>(), vec![&vec![3]]);

        let h = TruncPoly::univariate(3, [0, 5, 10]);
        assert!(h.reduce_mod(&BigInt::from(5)).is_zero());

        let neg = TruncPoly::univariate(3, [0, -1]);
        assert_eq!(neg.reduce_mod(&BigInt::from(3)).coeffs[&vec![1]], BigInt::from(2));
    }

    #[test]
    fn coefficient_and_valuation() {
        let f = TruncPoly::univariate(3, [0, 3, 5]);
        assert_eq!(f.coefficient(&[2]).unwrap(), BigInt::from(5));
        assert_eq!(f.coefficient(&[0]).unwrap(), BigInt::zero());
        assert!(matches!(f.coefficient(&[3]), Err(Error::ExponentOutOfRange { .. })));

        let shape = RingShape::univariate(3).with_filtration(2).unwrap();
        let x2 = TruncPoly::monomial(&shape, vec![2], 1).unwrap();
        assert_eq!(x2.filtration_valuation(), Some(4));
        assert_eq!(TruncPoly::zero(&shape).filtration_valuation(), None);
    }

    #[test]
    fn multivariate_mul_truncates_per_variable() {
        let shape = RingShape::new(vec![Truncation::Finite(2), Truncation::Finite(3)], 1).unwrap();
        let x = TruncPoly::var(&shape, 0);
        let y = TruncPoly::var(&shape, 1);
        let s = &x + &y;
        // (x + y)^2 = 2xy + y^2 since x^2 = 0
        let sq = &s * &s;
        assert_eq!(sq.coefficient(&[1, 1]).unwrap(), BigInt::from(2));
        assert_eq!(sq.coefficient(&[0, 2]).unwrap(), BigInt::one());
        assert_eq!(sq.num_terms(), 2);
        // (x + y)^3 = 3xy^2
        let cube = &sq * &s;
        assert_eq!(cube.num_terms(), 1);
        assert_eq!(cube.coefficient(&[1, 2]).unwrap(), BigInt::from(3));
    }

    #[test]
    fn truncate_and_embed() {
        let f = TruncPoly::univariate(5, [0, 1, 2, 3, 4]);
        let g = f.truncate_to(&RingShape::univariate(3)).unwrap();
        assert_eq!(g, TruncPoly::univariate(3, [0, 1, 2]));
        let back = g.embed_in(&RingShape::univariate(5)).unwrap();
        assert_eq!(back, TruncPoly::univariate(5, [0, 1, 2]));
        assert!(f.embed_in(&RingShape::univariate(3)).is_err());
    }
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::rule::CoeffRule;
use crate::arith::{binomial, factorize, is_prime, primes_upto};
use crate::error::{Error, Result};
use crate::truncpoly::{Exponent, RingShape, TruncPoly};

pub const DEFAULT_PRIME_BOUND: u64 = 50;

pub fn default_primes() -> Vec<u64> {
    primes_upto(DEFAULT_PRIME_BOUND)
}

/// Coefficient of one monomial in `psi^p(x_var)`, as a function of `p`.
/// An override for `p` wins over the rule; with neither the coefficient is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffSpec {
    pub var: usize,
    pub monomial: Exponent,
    pub rule: Option<CoeffRule>,
    pub overrides: BTreeMap<u64, BigInt>,
}

impl CoeffSpec {
    pub fn from_rule(var: usize, monomial: Exponent, rule: CoeffRule) -> Self {
        CoeffSpec {
            var,
            monomial,
            rule: Some(rule),
            overrides: BTreeMap::new(),
        }
    }

    pub fn with_override(mut self, p: u64, value: impl Into<BigInt>) -> Self {
        self.overrides.insert(p, value.into());
        self
    }

    pub fn value(&self, p: u64) -> Result<BigInt> {
        if let Some(v) = self.overrides.get(&p) {
            return Ok(v.clone());
        }
        match &self.rule {
            Some(r) => r.eval(p),
            None => Ok(BigInt::zero()),
        }
    }
}

/// Prime-indexed operations `psi^p(x_i)` on a truncated ring, given by
/// per-monomial coefficient rules, for `p` in a finite prime set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdamsFamily {
    shape: RingShape,
    specs: Vec<CoeffSpec>,
    primes: Vec<u64>,
}

impl AdamsFamily {
    pub fn new(shape: RingShape, specs: Vec<CoeffSpec>, primes: Vec<u64>) -> Result<Self> {
        let mut primes = primes;
        primes.sort_unstable();
        primes.dedup();
        if primes.is_empty() {
            return Err(Error::InvalidFamily("empty prime set".into()));
        }
        if let Some(&q) = primes.iter().find(|&&q| !is_prime(q)) {
            return Err(Error::InvalidFamily(format!("{q} is not prime")));
        }
        let mut specs = specs;
        specs.sort_by(|a, b| (a.var, &a.monomial).cmp(&(b.var, &b.monomial)));
        for w in specs.windows(2) {
            if w[0].var == w[1].var && w[0].monomial == w[1].monomial {
                return Err(Error::InvalidFamily(format!(
                    "two entries for monomial {:?} of variable {}",
                    w[0].monomial, w[0].var
                )));
            }
        }
        for s in &specs {
            if s.var >= shape.num_vars() {
                return Err(Error::IndexOutOfRange {
                    index: s.var,
                    max: shape.num_vars(),
                });
            }
            if s.monomial.len() != shape.num_vars() || !shape.contains(&s.monomial) {
                return Err(Error::ExponentOutOfRange {
                    exponent: s.monomial.clone(),
                });
            }
            if s.monomial.iter().all(|&k| k == 0) {
                let nonzero = s.rule.as_ref().is_some_and(|r| !r.numerator().is_empty())
                    || s.overrides.values().any(|v| !v.is_zero());
                if nonzero {
                    return Err(Error::NonzeroConstantTerm { index: s.var });
                }
            }
            if let Some(r) = &s.rule {
                for &p in &primes {
                    if !s.overrides.contains_key(&p) {
                        r.eval(p)?;
                    }
                }
            }
        }
        Ok(AdamsFamily { shape, specs, primes })
    }

    /// One variable truncated at `x^r`, with a rule for each listed degree.
    pub fn univariate(r: u32, rules: Vec<(u32, CoeffRule)>, primes: Vec<u64>) -> Result<Self> {
        let specs = rules
            .into_iter()
            .map(|(d, rule)| CoeffSpec::from_rule(0, vec![d], rule))
            .collect();
        Self::new(RingShape::univariate(r), specs, primes)
    }

    /// `psi^p(x_i) = (1 + x_i)^p - 1` in every variable.
    pub fn chern(shape: RingShape, primes: Vec<u64>) -> Result<Self> {
        let mut specs = Vec::new();
        for i in 0..shape.num_vars() {
            for d in 1..shape.bound(i) {
                let mut e = vec![0; shape.num_vars()];
                e[i] = d;
                specs.push(CoeffSpec::from_rule(i, e, CoeffRule::binomial_in_p(d)));
            }
        }
        Self::new(shape, specs, primes)
    }

    /// Family given by explicit polynomials `psi[p][i] = psi^p(x_i)`, stored
    /// as per-prime overrides.
    pub fn from_psi(shape: RingShape, psi: &BTreeMap<u64, Vec<TruncPoly>>) -> Result<Self> {
        let mut specs: BTreeMap<(usize, Exponent), BTreeMap<u64, BigInt>> = BTreeMap::new();
        for (&p, polys) in psi {
            if polys.len() != shape.num_vars() {
                return Err(Error::ArityMismatch {
                    expected: shape.num_vars(),
                    got: polys.len(),
                });
            }
            for (i, f) in polys.iter().enumerate() {
                if f.shape() != &shape {
                    return Err(Error::ShapeMismatch);
                }
                for (e, c) in f.terms() {
                    specs.entry((i, e.clone())).or_default().insert(p, c.clone());
                }
            }
        }
        let specs = specs
            .into_iter()
            .map(|((var, monomial), overrides)| CoeffSpec {
                var,
                monomial,
                rule: None,
                overrides,
            })
            .collect();
        Self::new(shape, specs, psi.keys().copied().collect())
    }

    pub fn shape(&self) -> &RingShape {
        &self.shape
    }

    pub fn specs(&self) -> &[CoeffSpec] {
        &self.specs
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Same rules over a different prime set.
    pub fn with_primes(&self, primes: Vec<u64>) -> Result<Self> {
        Self::new(self.shape.clone(), self.specs.clone(), primes)
    }

    /// The induced family on a smaller truncation of the same variables.
    pub fn truncated(&self, shape: &RingShape) -> Result<Self> {
        if shape.num_vars() != self.shape.num_vars()
            || (0..shape.num_vars()).any(|i| shape.bound(i) > self.shape.bound(i))
        {
            return Err(Error::ShapeMismatch);
        }
        let specs = self
            .specs
            .iter()
            .filter(|s| shape.contains(&s.monomial))
            .cloned()
            .collect();
        Self::new(shape.clone(), specs, self.primes.clone())
    }

    fn check_prime(&self, p: u64) -> Result<()> {
        if self.primes.binary_search(&p).is_ok() {
            Ok(())
        } else {
            Err(Error::PrimeOutOfSet(p))
        }
    }

    pub fn eval_psi(&self, p: u64, var: usize) -> Result<TruncPoly> {
        self.check_prime(p)?;
        if var >= self.shape.num_vars() {
            return Err(Error::IndexOutOfRange {
                index: var,
                max: self.shape.num_vars(),
            });
        }
        let mut terms = Vec::new();
        for s in self.specs.iter().filter(|s| s.var == var) {
            terms.push((s.monomial.clone(), s.value(p)?));
        }
        TruncPoly::from_terms(&self.shape, terms)
    }

    /// `psi^p` on every generator.
    pub fn psi(&self, p: u64) -> Result<Vec<TruncPoly>> {
        (0..self.shape.num_vars()).map(|i| self.eval_psi(p, i)).collect()
    }

    /// `psi^p` on every generator, for every prime in the set.
    pub fn psi_table(&self) -> Result<BTreeMap<u64, Vec<TruncPoly>>> {
        self.primes.iter().map(|&p| Ok((p, self.psi(p)?))).collect()
    }

    /// Linear coefficient of `psi^p(x_var)`.
    pub fn linear_coeff(&self, p: u64, var: usize) -> Result<BigInt> {
        let mut e = vec![0; self.shape.num_vars()];
        e[var] = 1;
        self.eval_psi(p, var)?.coefficient(&e)
    }

    /// `psi^k` for any `k >= 1`, composing prime operations along the
    /// factorization of `k`.
    pub fn psi_composite(&self, k: u64) -> Result<Vec<TruncPoly>> {
        if k == 0 {
            return Err(Error::IndexOutOfRange { index: 0, max: 0 });
        }
        let factors = factorize(k);
        if let Some(&q) = factors.iter().find(|&&q| self.primes.binary_search(&q).is_err()) {
            return Err(Error::UncoveredPrimeFactor(q));
        }
        let mut cur: Vec<TruncPoly> = (0..self.shape.num_vars())
            .map(|i| TruncPoly::var(&self.shape, i))
            .collect();
        for p in factors {
            let psi = self.psi(p)?;
            cur = cur.iter().map(|f| f.compose(&psi)).collect::<Result<_>>()?;
        }
        Ok(cur)
    }

    /// `true` when both families give the same `psi^p` for every prime in
    /// both prime sets, and the sets coincide.
    pub fn same_operations(&self, other: &AdamsFamily) -> Result<bool> {
        if self.shape != other.shape || self.primes != other.primes {
            return Ok(false);
        }
        for &p in &self.primes {
            if self.psi(p)? != other.psi(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Coefficients of `(1 + x)^b - 1` below `x^r`.
pub fn power_series_coeffs(b: &BigInt, r: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero()];
    out.extend((1..r).map(|j| binomial(b, j)));
    out
}

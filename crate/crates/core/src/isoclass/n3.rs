//! One-variable structures on `Z[x]/(x^3)`: `psi^p(x) = b_p x + c_p x^2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::automorphism::Automorphism;
use super::common::{
    coeff_table, linear_mismatch, require_same_primes, require_univariate, require_valid, LinearSeq, Obstruction,
    Witness,
};
use crate::adams::{AdamsFamily, CoeffRule, CoeffSpec};
use crate::arith::{gcd_all, theta, Valuation};
use crate::error::{Error, Result};
use crate::truncpoly::{RingShape, TruncPoly};

fn m(b: &BigInt) -> BigInt {
    b * (b - BigInt::one())
}

/// `b_2 != 0`, `p | b_p` for all `p`, and `2^{theta_2(b_2)} | b_p(b_p - 1)`
/// for odd `p`.
pub fn condition_a(b: &LinearSeq) -> bool {
    let Some(b2) = b.get(&2) else {
        return false;
    };
    if b2.is_zero() {
        return false;
    }
    let Valuation::Finite(t) = theta(2, b2) else {
        return false;
    };
    let two_t = BigInt::one() << t;
    b.iter()
        .all(|(&p, bp)| bp.is_multiple_of(&BigInt::from(p)) && (p == 2 || m(bp).is_multiple_of(&two_t)))
}

/// Odd primes `p` with `b_p != 0` and
/// `theta_p(b_p) = min { theta_p(b_q(b_q - 1)) : b_q != 0 }`.
pub fn condition_b_primes(b: &LinearSeq) -> Vec<u64> {
    let nonzero: Vec<&BigInt> = b.values().filter(|v| !v.is_zero()).collect();
    b.iter()
        .filter(|(&p, bp)| p > 2 && !bp.is_zero())
        .filter(|(&p, bp)| {
            let min = nonzero
                .iter()
                .map(|bq| theta(p, &m(bq)))
                .min()
                .unwrap_or(Valuation::NegInfinity);
            theta(p, bp) == min
        })
        .map(|(&p, _)| p)
        .collect()
}

/// `G = gcd(b_p(b_p - 1))` over the given primes.
pub fn g_of(b: &LinearSeq) -> BigInt {
    let ms: Vec<BigInt> = b.values().map(m).collect();
    gcd_all(ms.iter())
}

fn product(primes: &[u64]) -> BigInt {
    primes.iter().map(|&p| BigInt::from(p)).product()
}

/// Number of classes on `Z[x]/(x^3)` with linear coefficients `b`:
/// `ceil(G / (4 p_1 .. p_n))`.
pub fn count_n3(b: &LinearSeq) -> Result<BigInt> {
    if !condition_a(b) {
        return Err(Error::ConditionAViolated);
    }
    let den = product(&condition_b_primes(b)) * 4;
    Ok(g_of(b).div_ceil(&den))
}

/// The class `S((b_p), k)`: `c_p = k b_p (b_p - 1) / G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDataN3 {
    pub b: LinearSeq,
    pub g: BigInt,
    pub cond_b_primes: Vec<u64>,
    pub k: BigInt,
}

impl ClassDataN3 {
    pub fn new(b: LinearSeq, k: BigInt) -> Result<Self> {
        if !condition_a(&b) {
            return Err(Error::ConditionAViolated);
        }
        let g = g_of(&b);
        let cond_b_primes = condition_b_primes(&b);
        let half = &g / 2;
        if k.is_even() || k < BigInt::one() || k > half || !k.is_multiple_of(&product(&cond_b_primes)) {
            return Err(Error::ConstraintViolation(format!(
                "k = {k} must be odd, in [1, {half}] and divisible by {}",
                product(&cond_b_primes)
            )));
        }
        Ok(ClassDataN3 { b, g, cond_b_primes, k })
    }

    pub fn c(&self, p: u64) -> BigInt {
        &self.k * m(&self.b[&p]) / &self.g
    }

    pub fn family(&self) -> Result<AdamsFamily> {
        self.family_in(&RingShape::univariate(3))
    }

    /// The representative written with coefficient rules, given the rule
    /// that produced `b`: `c = k (b^2 - b) / G`.
    pub fn family_with_rule(&self, b_rule: &CoeffRule, shape: &RingShape) -> Result<AdamsFamily> {
        let c_rule = b_rule.product(b_rule).difference(b_rule).scaled(&self.k, &self.g);
        let specs = vec![
            CoeffSpec::from_rule(0, vec![1], b_rule.clone()),
            CoeffSpec::from_rule(0, vec![2], c_rule),
        ];
        let family = AdamsFamily::new(shape.clone(), specs, self.b.keys().copied().collect())?;
        if !family.same_operations(&self.family_in(shape)?)? {
            return Err(Error::ConstraintViolation(format!(
                "rule {b_rule} does not produce these b_p"
            )));
        }
        Ok(family)
    }

    /// The representative on a one-variable shape truncated at `x^3`.
    pub fn family_in(&self, shape: &RingShape) -> Result<AdamsFamily> {
        let psi = self
            .b
            .iter()
            .map(|(&p, bp)| {
                (
                    p,
                    vec![TruncPoly::univariate_in(shape, [BigInt::zero(), bp.clone(), self.c(p)])],
                )
            })
            .collect();
        AdamsFamily::from_psi(shape.clone(), &psi)
    }
}

/// Every class with linear coefficients `b`, in increasing `k`.
pub fn enumerate_n3(b: &LinearSeq) -> Result<Vec<ClassDataN3>> {
    if !condition_a(b) {
        return Err(Error::ConditionAViolated);
    }
    let g = g_of(b);
    let step = product(&condition_b_primes(b));
    let half = &g / 2;
    let mut out = Vec::new();
    // odd multiples of `step`; `step` is odd
    let mut k = step.clone();
    let two_step = &step * 2;
    while k <= half {
        out.push(ClassDataN3::new(b.clone(), k.clone())?);
        k += &two_step;
    }
    Ok(out)
}

/// Normal form on `Z[x]/(x^3)`, with an isomorphism `sigma` from the input
/// to the representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum N3NormalForm {
    /// `b_p = 0` for all `p`: `psi^p(x) = c_p x^2`, sign fixed by `c_2 > 0`.
    Quadratic {
        c: LinearSeq,
        sigma: Automorphism,
    },
    Linear {
        data: ClassDataN3,
        sigma: Automorphism,
    },
}

impl N3NormalForm {
    pub fn sigma(&self) -> &Automorphism {
        match self {
            N3NormalForm::Quadratic { sigma, .. } | N3NormalForm::Linear { sigma, .. } => sigma,
        }
    }

    pub fn representative(&self) -> Result<AdamsFamily> {
        match self {
            N3NormalForm::Linear { data, sigma } => data.family_in(sigma.shape()),
            N3NormalForm::Quadratic { c, sigma } => {
                let shape = sigma.shape();
                let psi = c
                    .iter()
                    .map(|(&p, cp)| {
                        (
                            p,
                            vec![TruncPoly::univariate_in(
                                shape,
                                [BigInt::zero(), BigInt::zero(), cp.clone()],
                            )],
                        )
                    })
                    .collect();
                AdamsFamily::from_psi(shape.clone(), &psi)
            }
        }
    }

    /// Same class data, ignoring the isomorphism.
    pub fn same_class(&self, other: &N3NormalForm) -> bool {
        match (self, other) {
            (N3NormalForm::Quadratic { c: a, .. }, N3NormalForm::Quadratic { c: b, .. }) => a == b,
            (N3NormalForm::Linear { data: a, .. }, N3NormalForm::Linear { data: b, .. }) => a == b,
            _ => false,
        }
    }
}

/// `b` and `c` of a one-variable family on `Z[x]/(x^3)`.
fn bc(family: &AdamsFamily) -> Result<(LinearSeq, LinearSeq)> {
    let t = coeff_table(family)?;
    Ok((
        t.iter().map(|(&p, v)| (p, v[1].clone())).collect(),
        t.iter().map(|(&p, v)| (p, v[2].clone())).collect(),
    ))
}

pub fn normal_form_n3(family: &AdamsFamily) -> Result<N3NormalForm> {
    require_univariate(family, 3)?;
    require_valid(family)?;
    let shape = family.shape().clone();
    let (b, c) = bc(family)?;
    let b2 = b.get(&2).cloned().ok_or(Error::PrimeOutOfSet(2))?;
    if b2.is_zero() {
        let u: i8 = if c[&2].is_positive() { 1 } else { -1 };
        let c = c.into_iter().map(|(p, v)| (p, v * u)).collect();
        return Ok(N3NormalForm::Quadratic {
            c,
            sigma: Automorphism::new(&shape, u, vec![])?,
        });
    }
    let m2 = m(&b2);
    let (q, r) = c[&2].div_mod_floor(&m2);
    let half = &m2 / 2;
    // sigma = u x + a x^2 carries c_p to u (c_p - a b_p (b_p - 1))
    let (u, a, cbar2): (i8, BigInt, BigInt) = if r <= half { (1, q, r) } else { (-1, q + 1, &m2 - r) };
    let g = g_of(&b);
    let k = &cbar2 * &g / &m2;
    if &k * &m2 != &cbar2 * &g {
        return Err(Error::InternalInconsistency(format!(
            "normalized c_2 = {cbar2} is not a multiple of b_2(b_2-1)/G"
        )));
    }
    let sigma = Automorphism::new(&shape, u, vec![a.clone()])?;
    for (&p, bp) in &b {
        let cbar = (&c[&p] - &a * m(bp)) * u;
        if cbar * &g != &k * m(bp) {
            return Err(Error::InternalInconsistency(format!(
                "normalized c_{p} disagrees with k = {k}"
            )));
        }
    }
    let data = ClassDataN3::new(b, k)?;
    Ok(N3NormalForm::Linear { data, sigma })
}

/// Isomorphism test on `Z[x]/(x^3)`: equal `b`, and either `c = u c'` (when
/// `b_2 = 0`) or `a b_2(b_2 - 1) = c_2 - u c'_2` for some `u = +-1` and
/// integer `a`. An isomorphism is then `u x + a x^2`.
pub fn iso_witness_n3(r: &AdamsFamily, s: &AdamsFamily) -> Result<Witness> {
    require_univariate(r, 3)?;
    require_univariate(s, 3)?;
    require_same_primes(r, s)?;
    let (b, c) = bc(r)?;
    let (bb, cc) = bc(s)?;
    if let Some(obs) = linear_mismatch(&b, &bb) {
        return Ok(Err(obs));
    }
    let shape = r.shape();
    let b2 = b.get(&2).cloned().ok_or(Error::PrimeOutOfSet(2))?;
    if b2.is_zero() {
        for u in [1i8, -1] {
            if c.iter().all(|(p, v)| *v == &cc[p] * u) {
                return Ok(Ok(Automorphism::new(shape, u, vec![])?));
            }
        }
        let p = c.iter().find(|(p, v)| **v != cc[p] && **v != -&cc[p]).map(|(&p, _)| p);
        let p = p.unwrap_or(2);
        return Ok(Err(Obstruction {
            u: None,
            degree: 2,
            prime: Some(p),
            detail: format!("c_{p} = {} is not +-{}", c[&p], cc[&p]),
        }));
    }
    let m2 = m(&b2);
    for u in [1i8, -1] {
        let diff = &c[&2] - &cc[&2] * u;
        if diff.is_multiple_of(&m2) {
            return Ok(Ok(Automorphism::new(shape, u, vec![diff / &m2])?));
        }
    }
    Ok(Err(Obstruction {
        u: None,
        degree: 2,
        prime: Some(2),
        detail: format!("{m2} divides neither {} - {} nor {} + {}", c[&2], cc[&2], c[&2], cc[&2]),
    }))
}

pub fn iso_criterion_n3(r: &AdamsFamily, s: &AdamsFamily) -> Result<bool> {
    Ok(iso_witness_n3(r, s)?.is_ok())
}

/// Linear coefficients of a family on `Z[x]/(x^2)`; they classify it.
pub fn normal_form_n2(family: &AdamsFamily) -> Result<LinearSeq> {
    require_univariate(family, 2)?;
    require_valid(family)?;
    Ok(coeff_table(family)?
        .into_iter()
        .map(|(p, v)| (p, v[1].clone()))
        .collect())
}

/// `r >= 1` with `b_p = p^r` for every prime given.
pub fn uniform_power(b: &LinearSeq) -> Option<u32> {
    let (&p0, b0) = b.iter().next()?;
    let mut r = 0u32;
    let mut v = BigInt::one();
    let p0b = BigInt::from(p0);
    while &v < b0 {
        v *= &p0b;
        r += 1;
    }
    if &v != b0 || r == 0 {
        return None;
    }
    b.iter()
        .all(|(&p, bp)| *bp == num_traits::pow(BigInt::from(p), r as usize))
        .then_some(r)
}

pub fn realizable_n2(b: &LinearSeq) -> bool {
    uniform_power(b).is_some()
}

/// `p -> f(p)` over the given primes.
pub fn seq_from(primes: &[u64], f: impl Fn(u64) -> BigInt) -> BTreeMap<u64, BigInt> {
    primes.iter().map(|&p| (p, f(p))).collect()
}

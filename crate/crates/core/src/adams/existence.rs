use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;

use super::family::{AdamsFamily, CoeffSpec};
use super::rule::CoeffRule;
use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::truncpoly::RingShape;

/// Builds the family
///
/// ```text
/// psi^p(x_i) = (1 + x_i)^{b[p,i]} - 1   if p >= N and x_i has a finite truncation,
///              (1 + x_i)^p - 1          otherwise,
/// ```
///
/// where `N` is the largest finite truncation. `b` must cover exactly the
/// pairs of the first branch, with `p | b[p,i]`, `b[p,i] >= r_i` and
/// `b[p,i] != p`. Variables without truncation use the shape's working cap.
pub fn construct_existence_family(
    shape: &RingShape,
    b: &BTreeMap<(u64, usize), BigInt>,
    primes: Vec<u64>,
) -> Result<AdamsFamily> {
    let big_n = shape
        .truncations()
        .iter()
        .filter(|t| t.is_finite())
        .map(|t| t.bound())
        .max()
        .ok_or_else(|| Error::ConstraintViolation("at least one variable must have a finite truncation".into()))?;
    let mut primes = primes;
    primes.sort_unstable();
    primes.dedup();
    let special = |p: u64, i: usize| p >= u64::from(big_n) && shape.truncations()[i].is_finite();

    for &(p, i) in b.keys() {
        if i >= shape.num_vars() || !primes.contains(&p) || !special(p, i) {
            return Err(Error::ConstraintViolation(format!(
                "b[{p},{i}] given, but only primes p >= {big_n} in the prime set and variables with finite truncation take one"
            )));
        }
    }
    for &p in &primes {
        for i in 0..shape.num_vars() {
            if !special(p, i) {
                continue;
            }
            let v = b
                .get(&(p, i))
                .ok_or_else(|| Error::ConstraintViolation(format!("b[{p},{i}] missing")))?;
            let r = shape.bound(i);
            if !v.is_multiple_of(&BigInt::from(p)) {
                return Err(Error::ConstraintViolation(format!(
                    "b[{p},{i}] = {v} is not divisible by {p}"
                )));
            }
            if *v < BigInt::from(r) {
                return Err(Error::ConstraintViolation(format!(
                    "b[{p},{i}] = {v} is less than the truncation {r}"
                )));
            }
            if *v == BigInt::from(p) {
                return Err(Error::ConstraintViolation(format!(
                    "b[{p},{i}] = {p} must differ from p"
                )));
            }
        }
    }

    let mut specs = Vec::new();
    for i in 0..shape.num_vars() {
        for d in 1..shape.bound(i) {
            let mut e = vec![0; shape.num_vars()];
            e[i] = d;
            let mut spec = CoeffSpec::from_rule(i, e, CoeffRule::binomial_in_p(d));
            for &p in &primes {
                if let Some(v) = b.get(&(p, i)) {
                    spec = spec.with_override(p, binomial(v, d));
                }
            }
            specs.push(spec);
        }
    }
    let family = AdamsFamily::new(shape.clone(), specs, primes)?;
    let report = family.validate()?;
    if !report.ok {
        return Err(Error::InternalInconsistency(format!(
            "constructed family fails validation: {:?}",
            report.to_json()
        )));
    }
    Ok(family)
}

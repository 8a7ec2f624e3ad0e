use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::family::AdamsFamily;
use crate::error::{Error, Result};
use crate::truncpoly::{Exponent, TruncPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommuteFailure {
    pub p: u64,
    pub q: u64,
    pub var: usize,
    pub monomial: Exponent,
    /// Coefficient in `psi^p(psi^q(x_var))`.
    pub pq: BigInt,
    /// Coefficient in `psi^q(psi^p(x_var))`.
    pub qp: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusFailure {
    pub p: u64,
    pub var: usize,
    pub monomial: Exponent,
    /// Nonzero residue of `psi^p(x_var) - x_var^p` mod `p` at `monomial`.
    pub residue: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub primes: Vec<u64>,
    pub commute_failures: Vec<CommuteFailure>,
    pub frobenius_failures: Vec<FrobeniusFailure>,
    pub ok: bool,
}

impl ValidationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.ok,
            "primes_checked": self.primes.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "commute_failures": self.commute_failures.iter().map(|f| json!({
                "p": f.p.to_string(),
                "q": f.q.to_string(),
                "var": f.var,
                "monomial": f.monomial,
                "pq": f.pq.to_string(),
                "qp": f.qp.to_string(),
            })).collect::<Vec<_>>(),
            "frobenius_failures": self.frobenius_failures.iter().map(|f| json!({
                "p": f.p.to_string(),
                "var": f.var,
                "monomial": f.monomial,
                "residue": f.residue.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Applies the ring map `x_j -> psi[j]` to `f`.
fn apply(f: &TruncPoly, psi: &[TruncPoly]) -> Result<TruncPoly> {
    f.compose(psi)
}

fn commute_failure(p: u64, q: u64, psi_p: &[TruncPoly], psi_q: &[TruncPoly]) -> Result<Option<CommuteFailure>> {
    for var in 0..psi_p.len() {
        let pq = apply(&psi_q[var], psi_p)?;
        let qp = apply(&psi_p[var], psi_q)?;
        if let Some((monomial, a, b)) = pq.first_difference(&qp) {
            return Ok(Some(CommuteFailure {
                p,
                q,
                var,
                monomial,
                pq: a,
                qp: b,
            }));
        }
    }
    Ok(None)
}

fn frobenius_failure(p: u64, psi_p: &[TruncPoly]) -> Option<FrobeniusFailure> {
    let m = BigInt::from(p);
    for (var, f) in psi_p.iter().enumerate() {
        let x = TruncPoly::var(f.shape(), var);
        let diff = f - &x.pow(p as u32);
        let red = diff.reduce_mod(&m);
        if let Some((e, c)) = red.first_term() {
            return Some(FrobeniusFailure {
                p,
                var,
                monomial: e.clone(),
                residue: c.clone(),
            });
        }
    }
    None
}

impl AdamsFamily {
    /// `psi^p psi^q (x_i) = psi^q psi^p (x_i)` for every generator; the first
    /// disagreement if not.
    pub fn check_commute(&self, p: u64, q: u64) -> Result<Option<CommuteFailure>> {
        let psi_p = self.psi(p)?;
        if p == q {
            return Ok(None);
        }
        let psi_q = self.psi(q)?;
        commute_failure(p, q, &psi_p, &psi_q)
    }

    /// `psi^p(x_i) = x_i^p` mod `p` for every generator; a witness if not.
    pub fn check_frobenius(&self, p: u64) -> Result<Option<FrobeniusFailure>> {
        Ok(frobenius_failure(p, &self.psi(p)?))
    }

    /// Frobenius at every prime and commutation for every pair of primes.
    /// One-variable families truncated at degree 2, 3 or 4 are also checked
    /// against the closed-form conditions on their coefficients; the two
    /// verdicts disagreeing is reported as an internal error.
    pub fn validate(&self) -> Result<ValidationReport> {
        let table = self.psi_table()?;
        let primes = self.primes().to_vec();
        let pairs: Vec<(u64, u64)> = primes
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| primes[i + 1..].iter().map(move |&q| (p, q)))
            .collect();
        let commute: Vec<Option<CommuteFailure>> = pairs
            .par_iter()
            .map(|&(p, q)| commute_failure(p, q, &table[&p], &table[&q]))
            .collect::<Result<_>>()?;
        let commute_failures: Vec<CommuteFailure> = commute.into_iter().flatten().collect();
        let frobenius_failures: Vec<FrobeniusFailure> = primes
            .iter()
            .filter_map(|&p| frobenius_failure(p, &table[&p]))
            .collect();
        let ok = commute_failures.is_empty() && frobenius_failures.is_empty();
        if let Some(expected) = closed_form_verdict(self.shape().univariate_bound(), &table) {
            if expected != ok {
                return Err(Error::InternalInconsistency(format!(
                    "coefficient conditions say {expected}, composition checks say {ok}"
                )));
            }
        }
        Ok(ValidationReport {
            primes,
            commute_failures,
            frobenius_failures,
            ok,
        })
    }
}

/// Closed-form validity of a one-variable family truncated at `x^r`,
/// `r` in {2, 3, 4}, from `psi^p(x) = b_p x + c_p x^2 + d_p x^3`:
///
/// * `p | b_p`; for `r >= 3`, `c_2` odd and `p | c_p` for odd `p`; for `r = 4`,
///   `d_2` even, `d_3 = 1` mod 3 and `p | d_p` for `p >= 5`;
/// * `(b_q^2 - b_q) c_p = (b_p^2 - b_p) c_q`;
/// * `(b_q^3 - b_q) d_p = (b_p^3 - b_p) d_q + 2 c_p c_q (b_p - b_q)`.
pub fn closed_form_verdict(bound: Option<u32>, table: &BTreeMap<u64, Vec<TruncPoly>>) -> Option<bool> {
    let r = bound?;
    if !(2..=4).contains(&r) {
        return None;
    }
    let coeffs: Vec<(u64, BigInt, BigInt, BigInt)> = table
        .iter()
        .map(|(&p, f)| (p, f[0].coeff(1), f[0].coeff(2), f[0].coeff(3)))
        .collect();
    Some(closed_form_ok(r, &coeffs))
}

/// See [`closed_form_verdict`]; entries are `(p, b_p, c_p, d_p)`, with `c_p`
/// and `d_p` ignored when `r` is too small to hold them.
pub fn closed_form_ok(r: u32, coeffs: &[(u64, BigInt, BigInt, BigInt)]) -> bool {
    let zero = BigInt::zero();
    for (p, b, c, d) in coeffs {
        let pb = BigInt::from(*p);
        if !b.is_multiple_of(&pb) {
            return false;
        }
        let c = if r >= 3 { c } else { &zero };
        let d = if r >= 4 { d } else { &zero };
        // psi^p(x) - x^p, where x^p survives only below the truncation
        let want = |k: u64| -> BigInt {
            if k == *p {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        };
        if r >= 3 && !(c - want(2)).is_multiple_of(&pb) {
            return false;
        }
        if r >= 4 && !(d - want(3)).is_multiple_of(&pb) {
            return false;
        }
    }
    if r == 2 {
        return true;
    }
    for (i, (_, bp, cp, dp)) in coeffs.iter().enumerate() {
        for (_, bq, cq, dq) in &coeffs[i + 1..] {
            let lhs = (bq * bq - bq) * cp;
            let rhs = (bp * bp - bp) * cq;
            if lhs != rhs {
                return false;
            }
            if r >= 4 {
                let lhs = (bq * bq * bq - bq) * dp;
                let rhs = (bp * bp * bp - bp) * dq + BigInt::from(2) * cp * cq * (bp - bq);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adams::family::default_primes;
    use crate::adams::rule::CoeffRule;
    use crate::truncpoly::RingShape;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn explicit(r: u32, rows: &[(u64, &[i64])]) -> AdamsFamily {
        let psi = rows
            .iter()
            .map(|(p, c)| (*p, vec![TruncPoly::univariate(r, c.iter().copied())]))
            .collect();
        AdamsFamily::from_psi(RingShape::univariate(r), &psi).unwrap()
    }

    #[test]
    fn commute_examples() {
        let chern = AdamsFamily::chern(RingShape::univariate(5), default_primes()).unwrap();
        assert_eq!(chern.check_commute(2, 3).unwrap(), None);

        let f = explicit(3, &[(2, &[0, 2, 1]), (3, &[0, 3])]);
        let fail = f.check_commute(2, 3).unwrap().unwrap();
        assert_eq!(fail.monomial, vec![2]);
        // psi^2(psi^3 x) = psi^2(3x) = 6x + 3x^2, psi^3(psi^2 x) = 6x + 9x^2
        assert_eq!((fail.pq.clone(), fail.qp.clone()), (b(3), b(9)));
        assert_eq!(f.check_commute(2, 2).unwrap(), None);
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(explicit(3, &[(2, &[0, 2, 1])]).check_frobenius(2).unwrap(), None);
        let bad = explicit(4, &[(3, &[0, 3, 3, 2])]);
        let w = bad.check_frobenius(3).unwrap().unwrap();
        assert_eq!(w.monomial, vec![3]);
        assert_eq!(explicit(3, &[(5, &[0, 5])]).check_frobenius(5).unwrap(), None);
    }

    #[test]
    fn validate_examples() {
        let s = AdamsFamily::univariate(
            3,
            vec![
                (1, CoeffRule::power(1, 2)),
                (2, CoeffRule::parse("p^2*(p^2-1)", &b(12)).unwrap()),
            ],
            default_primes(),
        )
        .unwrap();
        assert!(s.validate().unwrap().ok);

        let quad = AdamsFamily::new(
            RingShape::univariate(3),
            vec![super::super::family::CoeffSpec::from_rule(0, vec![2], CoeffRule::power(1, 1)).with_override(2, 1)],
            default_primes(),
        )
        .unwrap();
        assert!(quad.validate().unwrap().ok);

        let bad = explicit(3, &[(2, &[0, 0, 1]), (3, &[0, 3])]);
        let rep = bad.validate().unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.commute_failures.len(), 1);
    }

    #[test]
    fn chern_is_valid_in_two_variables() {
        let shape = RingShape::new(
            vec![
                crate::truncpoly::Truncation::Finite(3),
                crate::truncpoly::Truncation::Finite(4),
            ],
            1,
        )
        .unwrap();
        let f = AdamsFamily::chern(shape, vec![2, 3, 5, 7]).unwrap();
        assert!(f.validate().unwrap().ok);
    }
}

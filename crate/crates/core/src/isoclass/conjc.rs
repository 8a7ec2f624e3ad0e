use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::{json, Value};

use super::automorphism::Automorphism;
use super::common::{is_isomorphism, require_same_primes, require_valid, univariate_n};
use crate::adams::{AdamsFamily, FrobeniusFailure};
use crate::error::{Error, Result};
use crate::truncpoly::{RingShape, Truncation};

/// Parities seen at `n >= 6`: the `x^6` coefficient of `psi^2` on the
/// conjugated extension and the `x^3` coefficient of `sigma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probe {
    pub x6_coeff_mod2: u8,
    pub sigma_x3_mod2: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjcReport {
    pub n: u32,
    /// `sigma` lifted to `Z[x]/(x^{n+1})` with zero top coefficient.
    pub sigma: Automorphism,
    pub s_tilde: AdamsFamily,
    /// Frobenius failures at `p >= n`.
    pub high_failures: Vec<FrobeniusFailure>,
    /// Frobenius failures at `p < n`.
    pub low_failures: Vec<FrobeniusFailure>,
    pub probe: Option<Probe>,
}

impl ConjcReport {
    pub fn high_ok(&self) -> bool {
        self.high_failures.is_empty()
    }

    pub fn low_ok(&self) -> bool {
        self.low_failures.is_empty()
    }

    pub fn ok(&self) -> bool {
        self.high_ok() && self.low_ok()
    }

    pub fn to_json(&self) -> Value {
        let fails = |v: &[FrobeniusFailure]| -> Vec<Value> {
            v.iter()
                .map(|f| json!({"p": f.p.to_string(), "degree": f.monomial[0], "residue": f.residue.to_string()}))
                .collect()
        };
        let mut out = json!({
            "n": self.n,
            "sigma": self.sigma.to_json(),
            "primes_checked": self.s_tilde.primes().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "high_ok": self.high_ok(),
            "low_ok": self.low_ok(),
            "high_failures": fails(&self.high_failures),
            "low_failures": fails(&self.low_failures),
        });
        if let Some(p) = &self.probe {
            out["probe"] = json!({"x6_coeff_mod2": p.x6_coeff_mod2, "sigma_x3_mod2": p.sigma_x3_mod2});
        }
        out
    }
}

fn parity(v: &BigInt) -> u8 {
    u8::from(v.is_odd())
}

/// Given an isomorphism `sigma: R -> S` on `Z[x]/(x^n)` and an extension
/// `R~` of `R` to `Z[x]/(x^{n+1})`, conjugates `R~` by `sigma` (with zero
/// top coefficient) and checks `psi^p(x) = x^p` mod `p` on the result.
pub fn conjc_check(
    r: &AdamsFamily,
    s: &AdamsFamily,
    sigma: &Automorphism,
    r_tilde: &AdamsFamily,
) -> Result<ConjcReport> {
    let n = univariate_n(r)?;
    require_same_primes(r, s)?;
    require_same_primes(r, r_tilde)?;
    if !is_isomorphism(r, s, sigma)? {
        return Err(Error::ConstraintViolation(format!(
            "{sigma} is not an isomorphism R -> S"
        )));
    }
    if univariate_n(r_tilde)? != n + 1 {
        return Err(Error::PrefixMismatch);
    }
    let low_shape = r_tilde.shape().with_bounds(vec![Truncation::Finite(n)])?;
    if &low_shape != r.shape() || !r_tilde.truncated(&low_shape)?.same_operations(r)? {
        return Err(Error::PrefixMismatch);
    }
    require_valid(r_tilde)?;
    let shape: &RingShape = r_tilde.shape();
    let lifted = sigma.in_shape(shape)?;
    let s_tilde = r_tilde.conjugate(&lifted)?;
    let mut high_failures = Vec::new();
    let mut low_failures = Vec::new();
    for &p in s_tilde.primes() {
        if let Some(f) = s_tilde.check_frobenius(p)? {
            if p >= u64::from(n) {
                high_failures.push(f);
            } else {
                low_failures.push(f);
            }
        }
    }
    let probe = if n >= 6 && s_tilde.primes().contains(&2) {
        Some(Probe {
            x6_coeff_mod2: parity(&s_tilde.eval_psi(2, 0)?.coeff(6)),
            sigma_x3_mod2: parity(&lifted.coeff(3)),
        })
    } else {
        None
    };
    Ok(ConjcReport {
        n,
        sigma: lifted,
        s_tilde,
        high_failures,
        low_failures,
        probe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adams::default_primes;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn chern_extension() {
        for n in [3u32, 4, 5, 6] {
            let primes = default_primes();
            let r = AdamsFamily::chern(RingShape::univariate(n), primes.clone()).unwrap();
            let r_tilde = AdamsFamily::chern(RingShape::univariate(n + 1), primes).unwrap();
            let mut higher = vec![b(0); n as usize - 2];
            for (i, a) in higher.iter_mut().enumerate() {
                *a = b(i as i64 * 3 - 1);
            }
            let sigma = Automorphism::new(r.shape(), -1, higher).unwrap();
            let s = r.conjugate(&sigma).unwrap();
            let rep = conjc_check(&r, &s, &sigma, &r_tilde).unwrap();
            assert!(rep.high_ok(), "n = {n}");
            if n <= 5 {
                assert!(rep.low_ok(), "n = {n}");
            }
            assert_eq!(rep.probe.is_some(), n >= 6);
            if let Some(p) = rep.probe {
                assert_eq!(p.sigma_x3_mod2, 0);
            }
        }
    }

    #[test]
    fn prefix_mismatch() {
        let primes = default_primes();
        let r = AdamsFamily::chern(RingShape::univariate(3), primes.clone()).unwrap();
        let other = crate::isoclass::n4::case2_family(&b(1), &b(0), primes).unwrap();
        let id = Automorphism::identity(r.shape()).unwrap();
        assert_eq!(conjc_check(&r, &r, &id, &other), Err(Error::PrefixMismatch));
    }
}

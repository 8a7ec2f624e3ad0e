use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::automorphism::Automorphism;
use super::common::{coeff_table, require_same_primes, univariate_n};
use crate::adams::AdamsFamily;
use crate::error::{Error, Result};

/// The coefficients `a_{p,1}, .., a_{p,n-2}` of `psi^p(x)` on `Z[x]/(x^{n-1})`,
/// i.e. everything below the top degree of `Z[x]/(x^n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionPrefix {
    n: u32,
    coeffs: BTreeMap<u64, Vec<BigInt>>,
}

impl ExtensionPrefix {
    pub fn new(n: u32, coeffs: BTreeMap<u64, Vec<BigInt>>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidShape(format!("extensions start at n = 3, got {n}")));
        }
        if coeffs.is_empty() {
            return Err(Error::ConstraintViolation("no primes given".into()));
        }
        for (p, v) in &coeffs {
            if v.len() != n as usize - 2 {
                return Err(Error::ConstraintViolation(format!(
                    "p = {p}: expected {} coefficients, got {}",
                    n - 2,
                    v.len()
                )));
            }
        }
        Ok(ExtensionPrefix { n, coeffs })
    }

    /// The prefix of a family on `Z[x]/(x^n)`.
    pub fn from_family(family: &AdamsFamily) -> Result<Self> {
        let n = univariate_n(family)?;
        let coeffs = coeff_table(family)?
            .into_iter()
            .map(|(p, v)| (p, v[1..n as usize - 1].to_vec()))
            .collect();
        Self::new(n, coeffs)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, Vec<BigInt>> {
        &self.coeffs
    }

    /// `(q, |a_{q,1}^{n-1} - a_{q,1}|)` minimizing the second entry, smallest
    /// `q` on ties.
    pub fn minimizing_prime(&self) -> Result<(u64, BigInt)> {
        let mut best: Option<(u64, BigInt)> = None;
        for (&p, v) in &self.coeffs {
            let a = &v[0];
            if a.is_zero() {
                return Err(Error::ZeroLinearCoefficient(p));
            }
            let m = (num_traits::pow(a.clone(), self.n as usize - 1) - a).abs();
            if best.as_ref().is_none_or(|(_, b)| m < *b) {
                best = Some((p, m));
            }
        }
        Ok(best.expect("nonempty prefix"))
    }
}

/// `min_p |a_{p,1}^{n-1} - a_{p,1}|`: an upper bound on the number of classes
/// on `Z[x]/(x^n)` extending the prefix.
pub fn extension_bound(prefix: &ExtensionPrefix) -> Result<BigInt> {
    Ok(prefix.minimizing_prime()?.1)
}

pub(crate) fn extension_bound_of(family: &AdamsFamily) -> Result<BigInt> {
    extension_bound(&ExtensionPrefix::from_family(family)?)
}

/// For two families with the same prefix whose top coefficients at the
/// minimizing prime `q` agree modulo the bound: the isomorphism
/// `x + c x^{n-1}` with `a + a_{q,1} c = b + a_{q,1}^{n-1} c`.
pub fn top_shift_sigma(s: &AdamsFamily, t: &AdamsFamily) -> Result<Option<Automorphism>> {
    require_same_primes(s, t)?;
    let ps = ExtensionPrefix::from_family(s)?;
    if ps != ExtensionPrefix::from_family(t)? || s.shape() != t.shape() {
        return Err(Error::PrefixMismatch);
    }
    let n = ps.n();
    let (q, _) = ps.minimizing_prime()?;
    let a1 = &ps.coeffs()[&q][0];
    let m = num_traits::pow(a1.clone(), n as usize - 1) - a1;
    let top = |f: &AdamsFamily| -> Result<BigInt> { Ok(f.eval_psi(q, 0)?.coeff(n - 1)) };
    let diff = top(s)? - top(t)?;
    if !diff.is_multiple_of(&m) {
        return Ok(None);
    }
    let mut higher = vec![BigInt::zero(); n as usize - 2];
    higher[n as usize - 3] = diff / m;
    Ok(Some(Automorphism::new(s.shape(), 1, higher)?))
}

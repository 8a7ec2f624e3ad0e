use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::automorphism::Automorphism;
use crate::adams::AdamsFamily;
use crate::error::{Error, Result};

/// A per-prime integer sequence such as `(b_p)`.
pub type LinearSeq = BTreeMap<u64, BigInt>;

/// Fails with `WrongRegime` unless the family lives on `Z[x]/(x^n)`.
pub(crate) fn require_univariate(family: &AdamsFamily, n: u32) -> Result<()> {
    let shape = family.shape();
    if shape.num_vars() == 1 && shape.truncations()[0].is_finite() && shape.bound(0) == n {
        Ok(())
    } else {
        Err(Error::WrongRegime(format!("expected Z[x]/(x^{n}), got {shape}")))
    }
}

/// Truncation `n` of a one-variable family with finite truncation.
pub(crate) fn univariate_n(family: &AdamsFamily) -> Result<u32> {
    let shape = family.shape();
    if shape.num_vars() == 1 && shape.truncations()[0].is_finite() {
        Ok(shape.bound(0))
    } else {
        Err(Error::WrongRegime(format!("expected Z[x]/(x^n), got {shape}")))
    }
}

pub(crate) fn require_valid(family: &AdamsFamily) -> Result<()> {
    let rep = family.validate()?;
    if rep.ok {
        Ok(())
    } else {
        Err(Error::InvalidFamily(rep.to_json().to_string()))
    }
}

pub(crate) fn require_same_primes(r: &AdamsFamily, s: &AdamsFamily) -> Result<()> {
    if r.primes() == s.primes() {
        Ok(())
    } else {
        Err(Error::WrongRegime("families use different prime sets".into()))
    }
}

/// Dense coefficients `[0, b_p, c_p, ..]` of `psi^p(x)` for every prime.
pub(crate) fn coeff_table(family: &AdamsFamily) -> Result<BTreeMap<u64, Vec<BigInt>>> {
    univariate_n(family)?;
    Ok(family
        .psi_table()?
        .into_iter()
        .map(|(p, f)| (p, f[0].dense()))
        .collect())
}

/// `b_p = psi^p(x)` linear coefficients.
pub fn linear_seq(family: &AdamsFamily) -> Result<LinearSeq> {
    Ok(coeff_table(family)?
        .into_iter()
        .map(|(p, v)| (p, v[1].clone()))
        .collect())
}

/// Why two structures are not isomorphic: no `sigma` with linear coefficient
/// `u` (or any `u` when `None`) survives degree `degree`, witnessed at `prime`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub u: Option<i8>,
    pub degree: u32,
    pub prime: Option<u64>,
    pub detail: String,
}

impl Obstruction {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "u": self.u,
            "degree": self.degree,
            "prime": self.prime.map(|p| p.to_string()),
            "detail": self.detail,
        })
    }
}

/// First prime where `psi_R(sigma(x)) != sigma(psi_S(x))`.
pub fn iso_failure(r: &AdamsFamily, s: &AdamsFamily, sigma: &Automorphism) -> Result<Option<u64>> {
    require_same_primes(r, s)?;
    if r.shape() != s.shape() || sigma.shape() != r.shape() {
        return Err(Error::ShapeMismatch);
    }
    let g = sigma.as_poly();
    for &p in r.primes() {
        let lhs = r.eval_psi(p, 0)?.compose1(&g)?;
        let rhs = g.compose1(&s.eval_psi(p, 0)?)?;
        if lhs != rhs {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// `sigma` intertwines the two families at every prime.
pub fn is_isomorphism(r: &AdamsFamily, s: &AdamsFamily, sigma: &Automorphism) -> Result<bool> {
    Ok(iso_failure(r, s, sigma)?.is_none())
}

/// Verdict of an exact criterion: an isomorphism, or why there is none.
pub type Witness = std::result::Result<Automorphism, Obstruction>;

/// Degree-1 obstruction when the linear coefficients differ.
pub(crate) fn linear_mismatch(b: &LinearSeq, bb: &LinearSeq) -> Option<Obstruction> {
    b.iter().find(|(p, v)| bb.get(p) != Some(v)).map(|(&p, v)| Obstruction {
        u: None,
        degree: 1,
        prime: Some(p),
        detail: format!(
            "linear coefficients differ: {v} vs {}",
            bb.get(&p).map(|x| x.to_string()).unwrap_or_default()
        ),
    })
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::{json, Value};

use super::automorphism::Automorphism;
use super::common::{
    is_isomorphism, linear_mismatch, linear_seq, require_same_primes, require_valid, univariate_n, Obstruction, Witness,
};
use super::n3::iso_witness_n3;
use super::n4::{case2_params, iso_witness_n4_case2, iso_witness_n4_case4};
use crate::adams::AdamsFamily;
use crate::error::{Error, Result};
use crate::truncpoly::TruncPoly;

/// Search nodes visited before giving up on free coefficients.
const NODE_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoResult {
    Isomorphic(Automorphism),
    /// One obstruction per sign `u` (or a single one valid for both).
    NotIsomorphic(Vec<Obstruction>),
    /// Some coefficient of `sigma` was unconstrained and no value in
    /// `[-bound, bound]` worked.
    Unknown {
        bound: u64,
        free_degrees: Vec<u32>,
    },
}

impl IsoResult {
    pub fn to_json(&self, primes: &[u64]) -> Value {
        let primes: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
        match self {
            IsoResult::Isomorphic(sigma) => json!({
                "verdict": "isomorphic",
                "sigma": sigma.to_json(),
                "primes_checked": primes,
            }),
            IsoResult::NotIsomorphic(obs) => json!({
                "verdict": "not_isomorphic",
                "obstructions": obs.iter().map(Obstruction::to_json).collect::<Vec<_>>(),
                "primes_checked": primes,
            }),
            IsoResult::Unknown { bound, free_degrees } => json!({
                "verdict": "unknown",
                "search_bound": bound.to_string(),
                "free_degrees": free_degrees,
                "primes_checked": primes,
            }),
        }
    }
}

enum Search {
    Found(Vec<BigInt>),
    Contradiction(Obstruction),
    Exhausted(Vec<u32>),
}

struct Ctx<'a> {
    n: u32,
    bound: u64,
    psi_r: &'a BTreeMap<u64, TruncPoly>,
    psi_s: &'a BTreeMap<u64, TruncPoly>,
    b: &'a BTreeMap<u64, BigInt>,
    nodes: usize,
}

fn sigma_poly(ctx: &Ctx, u: i8, higher: &[BigInt]) -> TruncPoly {
    let shape = ctx.psi_r.values().next().expect("nonempty").shape();
    let mut c = vec![BigInt::zero(), BigInt::from(u)];
    c.extend(higher.iter().cloned());
    TruncPoly::univariate_in(shape, c)
}

/// Values `0, 1, -1, 2, -2, ..` up to `bound`.
fn candidates(bound: u64) -> impl Iterator<Item = BigInt> {
    std::iter::once(BigInt::zero()).chain((1..=bound).flat_map(|v| [BigInt::from(v), -BigInt::from(v)]))
}

/// Fixes `a_k` for `k = higher.len() + 2` from
/// `(b_p^k - b_p) a_k = [x^k] (psi_R(sigma_0) - sigma_0(psi_S))`, where
/// `sigma_0` has `a_k = 0`.
fn dfs(ctx: &mut Ctx, u: i8, higher: &mut Vec<BigInt>) -> Result<Search> {
    let k = higher.len() as u32 + 2;
    if k >= ctx.n {
        return Ok(Search::Found(higher.clone()));
    }
    ctx.nodes += 1;
    if ctx.nodes > NODE_BUDGET {
        return Ok(Search::Exhausted(vec![k]));
    }
    let s0 = sigma_poly(ctx, u, higher);
    let mut forced: Option<(u64, BigInt)> = None;
    for (&p, f) in ctx.psi_r {
        let lhs = f.compose1(&s0)?.coeff(k);
        let rhs = s0.compose1(&ctx.psi_s[&p])?.coeff(k);
        let t = lhs - rhs;
        let bp = &ctx.b[&p];
        let m = num_traits::pow(bp.clone(), k as usize) - bp;
        let fail = |detail: String| {
            Ok(Search::Contradiction(Obstruction {
                u: Some(u),
                degree: k,
                prime: Some(p),
                detail,
            }))
        };
        if m.is_zero() {
            if !t.is_zero() {
                return fail(format!("0 * a_{k} = {t}"));
            }
            continue;
        }
        let (q, r) = t.div_rem(&m);
        if !r.is_zero() {
            return fail(format!("{m} * a_{k} = {t} has no integer solution"));
        }
        match &forced {
            Some((p0, v)) if *v != q => {
                return fail(format!("a_{k} = {v} from p = {p0} but {q} from p = {p}"));
            }
            Some(_) => {}
            None => forced = Some((p, q)),
        }
    }
    if let Some((_, a)) = forced {
        higher.push(a);
        let res = dfs(ctx, u, higher);
        higher.pop();
        return res;
    }
    let mut free = vec![k];
    for a in candidates(ctx.bound) {
        higher.push(a);
        let res = dfs(ctx, u, higher)?;
        higher.pop();
        match res {
            Search::Found(h) => return Ok(Search::Found(h)),
            Search::Contradiction(_) => {}
            Search::Exhausted(d) => free.extend(d),
        }
        if ctx.nodes > NODE_BUDGET {
            break;
        }
    }
    free.sort_unstable();
    free.dedup();
    Ok(Search::Exhausted(free))
}

/// Searches for `sigma = u x + a_2 x^2 + ..` with
/// `psi_R^p(sigma(x)) = sigma(psi_S^p(x))` for every active prime, one degree
/// at a time. Coefficients left free by every prime are tried in
/// `[-bound, bound]`.
pub fn iso_search(r: &AdamsFamily, s: &AdamsFamily, bound: u64) -> Result<IsoResult> {
    require_same_primes(r, s)?;
    let n = univariate_n(r)?;
    if r.shape() != s.shape() {
        return Err(Error::ShapeMismatch);
    }
    let b = linear_seq(r)?;
    if let Some(obs) = linear_mismatch(&b, &linear_seq(s)?) {
        return Ok(IsoResult::NotIsomorphic(vec![obs]));
    }
    let one = |f: &AdamsFamily| -> Result<BTreeMap<u64, TruncPoly>> {
        Ok(f.psi_table()?
            .into_iter()
            .map(|(p, mut v)| (p, v.swap_remove(0)))
            .collect())
    };
    let (psi_r, psi_s) = (one(r)?, one(s)?);
    let mut ctx = Ctx {
        n,
        bound,
        psi_r: &psi_r,
        psi_s: &psi_s,
        b: &b,
        nodes: 0,
    };
    let mut obstructions = Vec::new();
    let mut free = Vec::new();
    for u in [1i8, -1] {
        match dfs(&mut ctx, u, &mut Vec::new())? {
            Search::Found(higher) => {
                let sigma = Automorphism::new(r.shape(), u, higher)?;
                if !is_isomorphism(r, s, &sigma)? {
                    return Err(Error::InternalInconsistency(format!(
                        "solved map {sigma} does not intertwine the operations"
                    )));
                }
                return Ok(IsoResult::Isomorphic(sigma));
            }
            Search::Contradiction(obs) => obstructions.push(obs),
            Search::Exhausted(d) => free.extend(d),
        }
    }
    if free.is_empty() {
        Ok(IsoResult::NotIsomorphic(obstructions))
    } else {
        free.sort_unstable();
        free.dedup();
        Ok(IsoResult::Unknown {
            bound,
            free_degrees: free,
        })
    }
}

/// The exact criterion covering the pair, if any.
fn criterion(r: &AdamsFamily, s: &AdamsFamily) -> Result<Option<Witness>> {
    match univariate_n(r)? {
        3 => Ok(Some(iso_witness_n3(r, s)?)),
        4 => {
            if case2_params(r)?.is_some() && case2_params(s)?.is_some() {
                return Ok(Some(iso_witness_n4_case2(r, s)?));
            }
            let zero = |f: &AdamsFamily| -> Result<bool> { Ok(linear_seq(f)?.values().all(Zero::is_zero)) };
            if zero(r)? && zero(s)? {
                return Ok(Some(iso_witness_n4_case4(r, s)?));
            }
            Ok(None)
        }
        _ => Ok(None),
    }
}

/// Decides whether two valid families on `Z[x]/(x^n)` are isomorphic.
///
/// The degree-by-degree search runs in every case. Where an exact criterion
/// applies (`n = 3`; `n = 4` with both families of the form `S(k, d_2)` or
/// with all `b_p = 0`) it decides, and the search must agree with it.
pub fn iso_solve(r: &AdamsFamily, s: &AdamsFamily, bound: u64) -> Result<IsoResult> {
    require_same_primes(r, s)?;
    require_valid(r)?;
    require_valid(s)?;
    let searched = iso_search(r, s, bound)?;
    let Some(witness) = criterion(r, s)? else {
        return Ok(searched);
    };
    match (searched, witness) {
        (IsoResult::Isomorphic(sigma), Ok(_)) => Ok(IsoResult::Isomorphic(sigma)),
        (IsoResult::NotIsomorphic(obs), Err(_)) => Ok(IsoResult::NotIsomorphic(obs)),
        (IsoResult::Unknown { .. }, Ok(sigma)) => {
            if !is_isomorphism(r, s, &sigma)? {
                return Err(Error::InternalInconsistency(format!(
                    "criterion map {sigma} does not intertwine the operations"
                )));
            }
            Ok(IsoResult::Isomorphic(sigma))
        }
        (IsoResult::Unknown { .. }, Err(obs)) => Ok(IsoResult::NotIsomorphic(vec![obs])),
        (searched, witness) => Err(Error::InternalInconsistency(format!(
            "search gave {searched:?} but the criterion gave {witness:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adams::{default_primes, CoeffRule, CoeffSpec};
    use crate::isoclass::n4::case2_family;
    use crate::truncpoly::RingShape;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn s10_vs_s50() {
        let p = default_primes();
        let s10 = case2_family(&b(1), &b(0), p.clone()).unwrap();
        let s50 = case2_family(&b(5), &b(0), p).unwrap();
        match iso_solve(&s10, &s50, 8).unwrap() {
            IsoResult::NotIsomorphic(obs) => {
                assert_eq!(obs.len(), 2);
                assert!(obs.iter().all(|o| o.degree == 2 && o.prime == Some(2)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn finds_the_shift() {
        let p = default_primes();
        let s = case2_family(&b(1), &b(2), p.clone()).unwrap();
        let t = case2_family(&b(1), &b(122), p).unwrap();
        match iso_solve(&s, &t, 8).unwrap() {
            IsoResult::Isomorphic(sigma) => {
                assert_eq!(sigma.to_json().to_string(), r#"{"u":1,"coeffs":["0","-2"]}"#)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn conjugates_are_found() {
        let chern = AdamsFamily::chern(RingShape::univariate(6), default_primes()).unwrap();
        let tau = Automorphism::new(chern.shape(), -1, vec![b(2), b(-1), b(5), b(3)]).unwrap();
        let g = chern.conjugate(&tau).unwrap();
        match iso_solve(&chern, &g, 0).unwrap() {
            IsoResult::Isomorphic(sigma) => assert!(is_isomorphism(&chern, &g, &sigma).unwrap()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_coefficients_with_zero_bound() {
        // psi^p(x) = c_p x^2 with all b_p = 0: a_2 is free
        let quad = AdamsFamily::new(
            RingShape::univariate(3),
            vec![CoeffSpec::from_rule(0, vec![2], CoeffRule::power(1, 1)).with_override(2, 1)],
            default_primes(),
        )
        .unwrap();
        let neg = quad
            .conjugate(&Automorphism::new(quad.shape(), -1, vec![]).unwrap())
            .unwrap();
        match iso_solve(&quad, &neg, 0).unwrap() {
            IsoResult::Isomorphic(sigma) => assert_eq!(sigma.u(), -1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn different_linear_terms() {
        let p = default_primes();
        let chern = AdamsFamily::chern(RingShape::univariate(4), p.clone()).unwrap();
        let s = case2_family(&b(1), &b(0), p).unwrap();
        match iso_solve(&chern, &s, 8).unwrap() {
            IsoResult::NotIsomorphic(obs) => assert_eq!(obs[0].degree, 1),
            other => panic!("{other:?}"),
        }
    }
}

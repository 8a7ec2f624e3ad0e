//! One-variable structures on `Z[x]/(x^4)`: `psi^p(x) = b_p x + c_p x^2 + d_p x^3`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::automorphism::Automorphism;
use super::bound::extension_bound_of;
use super::common::{
    coeff_table, is_isomorphism, linear_mismatch, require_same_primes, require_univariate, require_valid, LinearSeq,
    Obstruction, Witness,
};
use super::n3::{normal_form_n3, N3NormalForm};
use crate::adams::{AdamsFamily, CoeffRule, CoeffSpec};
use crate::arith::exact_div;
use crate::error::{Error, Result};
use crate::truncpoly::{RingShape, TruncPoly};

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Rules for `S(k, d_2)`: `b_p = p^2`, `c_p = k p^2 (p^2 - 1) / 12`,
/// `d_p = p^2 (p^4 - 1) d_2 / 60 + k^2 p^2 (p^2 - 1)(p^2 - 4) / 360`.
pub fn case2_rules(k: &BigInt, d2: &BigInt) -> Vec<(u32, CoeffRule)> {
    let z = BigInt::zero;
    let k2 = k * k;
    let c = CoeffRule::new(vec![z(), z(), -k, z(), k.clone()], int(12)).expect("positive denominator");
    let d = CoeffRule::new(
        vec![z(), z(), &k2 * 4 - d2 * 6, z(), -&k2 * 5, z(), k2 + d2 * 6],
        int(360),
    )
    .expect("positive denominator");
    vec![(1, CoeffRule::power(1, 2)), (2, c), (3, d)]
}

/// The family `S(k, d_2)` on a one-variable shape truncated at `x^4`.
pub fn case2_family_in(shape: &RingShape, k: &BigInt, d2: &BigInt, primes: Vec<u64>) -> Result<AdamsFamily> {
    let specs = case2_rules(k, d2)
        .into_iter()
        .map(|(deg, rule)| CoeffSpec::from_rule(0, vec![deg], rule))
        .collect();
    AdamsFamily::new(shape.clone(), specs, primes)
}

pub fn case2_family(k: &BigInt, d2: &BigInt, primes: Vec<u64>) -> Result<AdamsFamily> {
    case2_family_in(&RingShape::univariate(4), k, d2, primes)
}

/// `S(k, d_2)` for `k` in {1, 5} and even `d_2` in `[0, 58]`.
pub fn enumerate_n4_case2(primes: &[u64]) -> Result<Vec<(BigInt, BigInt, AdamsFamily)>> {
    let mut out = Vec::with_capacity(60);
    for k in [1, 5] {
        for d2 in (0..60).step_by(2) {
            let (k, d2) = (int(k), int(d2));
            let f = case2_family(&k, &d2, primes.to_vec())?;
            out.push((k, d2, f));
        }
    }
    Ok(out)
}

struct Bcd {
    b: LinearSeq,
    c: LinearSeq,
    d: LinearSeq,
}

fn bcd(family: &AdamsFamily) -> Result<Bcd> {
    require_univariate(family, 4)?;
    let t = coeff_table(family)?;
    let col = |i: usize| t.iter().map(|(&p, v)| (p, v[i].clone())).collect();
    Ok(Bcd {
        b: col(1),
        c: col(2),
        d: col(3),
    })
}

fn all_powers(b: &LinearSeq, r: u32) -> bool {
    b.iter()
        .all(|(&p, v)| *v == num_traits::pow(BigInt::from(p), r as usize))
}

/// `(k, d_2)` when the family has exactly the shape of `S(k, d_2)` with `k` in
/// {1, 5} and even `d_2`.
pub fn case2_params(family: &AdamsFamily) -> Result<Option<(BigInt, BigInt)>> {
    let x = bcd(family)?;
    if !all_powers(&x.b, 2) {
        return Ok(None);
    }
    let (Some(k), Some(d2)) = (x.c.get(&2), x.d.get(&2)) else {
        return Ok(None);
    };
    if !(k == &int(1) || k == &int(5)) || d2.is_odd() {
        return Ok(None);
    }
    let rules = case2_rules(k, d2);
    for &p in family.primes() {
        let want_c = rules[1].1.eval(p)?;
        let want_d = rules[2].1.eval(p)?;
        if x.c[&p] != want_c || x.d[&p] != want_d {
            return Ok(None);
        }
    }
    Ok(Some((k.clone(), d2.clone())))
}

/// `S(k, d_2) ~ S(k', d_2')` iff `k = k'` and `d_2 = d_2'` mod 60, via
/// `x + beta x^3` with `d_2 - d_2' = 60 beta`.
pub fn iso_witness_n4_case2(r: &AdamsFamily, s: &AdamsFamily) -> Result<Witness> {
    require_same_primes(r, s)?;
    let regime = || Error::WrongRegime("both families must be of the form S(k, d_2)".into());
    let (k, d2) = case2_params(r)?.ok_or_else(regime)?;
    let (kk, dd2) = case2_params(s)?.ok_or_else(regime)?;
    if k != kk {
        return Ok(Err(Obstruction {
            u: None,
            degree: 2,
            prime: Some(2),
            detail: format!("k = {k} and k' = {kk} differ"),
        }));
    }
    let diff = &d2 - &dd2;
    if !diff.is_multiple_of(&int(60)) {
        return Ok(Err(Obstruction {
            u: None,
            degree: 3,
            prime: Some(2),
            detail: format!("d_2 - d_2' = {diff} is not divisible by 60"),
        }));
    }
    Ok(Ok(Automorphism::new(r.shape(), 1, vec![BigInt::zero(), diff / 60])?))
}

pub fn iso_criterion_n4_case2(r: &AdamsFamily, s: &AdamsFamily) -> Result<bool> {
    Ok(iso_witness_n4_case2(r, s)?.is_ok())
}

/// With all `b_p = 0`: isomorphic iff `c = u c'` and `d'_p = d_p + 2 c_p alpha`
/// for one integer `alpha`, via `u x + alpha x^2`.
pub fn iso_witness_n4_case4(r: &AdamsFamily, s: &AdamsFamily) -> Result<Witness> {
    require_same_primes(r, s)?;
    let x = bcd(r)?;
    let y = bcd(s)?;
    if let Some(obs) = linear_mismatch(&x.b, &y.b) {
        return Ok(Err(obs));
    }
    if x.b.values().any(|v| !v.is_zero()) {
        return Err(Error::WrongRegime("linear coefficients must all vanish".into()));
    }
    let mut last = None;
    for u in [1i8, -1] {
        if let Some((&p, _)) = x.c.iter().find(|(p, v)| **v != &y.c[p] * u) {
            last = Some(Obstruction {
                u: Some(u),
                degree: 2,
                prime: Some(p),
                detail: format!("c_{p} = {} but u c'_{p} = {}", x.c[&p], &y.c[&p] * u),
            });
            continue;
        }
        match case4_alpha(&x, &y) {
            Ok(alpha) => return Ok(Ok(Automorphism::new(r.shape(), u, vec![alpha])?)),
            Err(mut obs) => {
                obs.u = Some(u);
                last = Some(obs);
            }
        }
    }
    Ok(Err(last.expect("two signs tried")))
}

/// `alpha` with `d'_p - d_p = 2 c_p alpha` for every `p`.
fn case4_alpha(x: &Bcd, y: &Bcd) -> std::result::Result<BigInt, Obstruction> {
    let mut alpha: Option<(u64, BigInt)> = None;
    for (&p, cp) in &x.c {
        let t = &y.d[&p] - &x.d[&p];
        let m: BigInt = cp * 2;
        let fail = |detail: String| Obstruction {
            u: None,
            degree: 3,
            prime: Some(p),
            detail,
        };
        if m.is_zero() {
            if !t.is_zero() {
                return Err(fail(format!("0 * alpha = {t}")));
            }
            continue;
        }
        let Some(a) = exact_div(&t, &m) else {
            return Err(fail(format!("{m} * alpha = {t} has no integer solution")));
        };
        match &alpha {
            Some((q, prev)) if *prev != a => {
                return Err(fail(format!("alpha = {prev} from p = {q} but {a} from p = {p}")));
            }
            Some(_) => {}
            None => alpha = Some((p, a)),
        }
    }
    Ok(alpha.map(|(_, a)| a).unwrap_or_default())
}

pub fn iso_criterion_n4_case4(r: &AdamsFamily, s: &AdamsFamily) -> Result<bool> {
    Ok(iso_witness_n4_case4(r, s)?.is_ok())
}

/// Classification on `Z[x]/(x^4)`; `sigma` maps the input to the
/// representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum N4Class {
    /// `b_p = p`: the line bundle structure `(1 + x)^p - 1`.
    Chern { sigma: Automorphism },
    /// `b_p = p^2`: one of the 60 structures `S(k, d_2)`.
    Quaternionic { k: BigInt, d2: BigInt, sigma: Automorphism },
    /// Any other nonzero `b`; only the number of extensions of the degree-3
    /// part is bounded.
    General { b: LinearSeq, extension_bound: BigInt },
    /// `b_p = 0`: normalized to `c_2 > 0` and `0 <= d_2 < 2 c_2`.
    Quadratic {
        c: LinearSeq,
        d: LinearSeq,
        sigma: Automorphism,
    },
}

impl N4Class {
    pub fn case(&self) -> u32 {
        match self {
            N4Class::Chern { .. } => 1,
            N4Class::Quaternionic { .. } => 2,
            N4Class::General { .. } => 3,
            N4Class::Quadratic { .. } => 4,
        }
    }

    pub fn sigma(&self) -> Option<&Automorphism> {
        match self {
            N4Class::Chern { sigma } | N4Class::Quaternionic { sigma, .. } | N4Class::Quadratic { sigma, .. } => {
                Some(sigma)
            }
            N4Class::General { .. } => None,
        }
    }

    /// The normal-form family, when there is one.
    pub fn representative(&self, primes: &[u64]) -> Result<Option<AdamsFamily>> {
        Ok(match self {
            N4Class::Chern { sigma } => Some(AdamsFamily::chern(sigma.shape().clone(), primes.to_vec())?),
            N4Class::Quaternionic { k, d2, sigma } => Some(case2_family_in(sigma.shape(), k, d2, primes.to_vec())?),
            N4Class::Quadratic { c, d, sigma } => {
                let shape = sigma.shape();
                let psi = c
                    .iter()
                    .map(|(&p, cp)| {
                        (
                            p,
                            vec![TruncPoly::univariate_in(
                                shape,
                                [BigInt::zero(), BigInt::zero(), cp.clone(), d[&p].clone()],
                            )],
                        )
                    })
                    .collect();
                Some(AdamsFamily::from_psi(shape.clone(), &psi)?)
            }
            N4Class::General { .. } => None,
        })
    }
}

/// Isomorphism onto the line bundle structure when `b_p = p`.
pub fn chern_sigma(shape: &RingShape, c2: &BigInt, d2: &BigInt) -> Result<Automorphism> {
    let one = BigInt::one();
    let two = int(2);
    let six = int(6);
    let div = |a: &BigInt, b: &BigInt| {
        exact_div(a, b).ok_or_else(|| Error::InternalInconsistency(format!("{a} is not divisible by {b}")))
    };
    if c2.is_multiple_of(&int(3)) {
        let a2 = div(&(c2 + &one), &two)?;
        let a3 = -div(&((c2 + &one) * (c2 + &two) + d2), &six)?;
        Automorphism::new(shape, -1, vec![a2, a3])
    } else {
        let a2 = div(&(c2 - &one), &two)?;
        let a3 = div(&((c2 - &one) * (c2 - &two) + d2), &six)?;
        Automorphism::new(shape, 1, vec![a2, a3])
    }
}

pub fn classify_n4(family: &AdamsFamily) -> Result<N4Class> {
    require_univariate(family, 4)?;
    require_valid(family)?;
    let shape = family.shape().clone();
    let x = bcd(family)?;
    let primes = family.primes().to_vec();
    let c2 = x.c.get(&2).ok_or(Error::PrimeOutOfSet(2))?;
    let d2 = &x.d[&2];

    let class = if all_powers(&x.b, 1) {
        N4Class::Chern {
            sigma: chern_sigma(&shape, c2, d2)?,
        }
    } else if all_powers(&x.b, 2) {
        let low = family.truncated(&shape.with_bounds(vec![crate::truncpoly::Truncation::Finite(3)])?)?;
        let N3NormalForm::Linear { data, sigma: s1 } = normal_form_n3(&low)? else {
            return Err(Error::InternalInconsistency(
                "b_p = p^2 gave a quadratic normal form".into(),
            ));
        };
        let s1 = s1.in_shape(&shape)?;
        let t = family.conjugate(&s1)?;
        let k = data.k;
        if !(k == int(1) || k == int(5)) {
            return Err(Error::InternalInconsistency(format!("k = {k} on Z[x]/(x^4)")));
        }
        let td2 = t.eval_psi(2, 0)?.coeff(3);
        let reduced = td2.mod_floor(&int(60));
        let beta = (&td2 - &reduced) / 60;
        let s2 = Automorphism::new(&shape, 1, vec![BigInt::zero(), beta])?;
        N4Class::Quaternionic {
            k,
            d2: reduced,
            sigma: s1.then_inner(&s2)?,
        }
    } else if x.b.values().all(Zero::is_zero) {
        let u: i8 = if c2.is_positive() { 1 } else { -1 };
        let m = c2.abs() * 2;
        let reduced = d2.mod_floor(&m);
        let alpha = (&reduced - d2) / (c2 * 2);
        let c: LinearSeq = x.c.iter().map(|(&p, v)| (p, v * u)).collect();
        let d: LinearSeq = x.d.iter().map(|(&p, v)| (p, v + &x.c[&p] * &alpha * 2)).collect();
        N4Class::Quadratic {
            c,
            d,
            sigma: Automorphism::new(&shape, u, vec![alpha])?,
        }
    } else {
        return Ok(N4Class::General {
            extension_bound: extension_bound_of(family)?,
            b: x.b,
        });
    };
    let rep = class.representative(&primes)?.expect("normal form");
    let sigma = class.sigma().expect("normal form");
    if !is_isomorphism(family, &rep, sigma)? {
        return Err(Error::InternalInconsistency(format!(
            "normalizing map {sigma} does not intertwine the operations"
        )));
    }
    Ok(class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adams::default_primes;

    fn explicit(rows: impl Fn(u64) -> [i64; 4]) -> AdamsFamily {
        let psi = default_primes()
            .into_iter()
            .map(|p| (p, vec![TruncPoly::univariate(4, rows(p))]))
            .collect();
        AdamsFamily::from_psi(RingShape::univariate(4), &psi).unwrap()
    }

    #[test]
    fn case2_rule_values() {
        let f = case2_family(&int(1), &int(0), default_primes()).unwrap();
        assert!(f.validate().unwrap().ok);
        for (k, d2) in [(1, 0), (5, 2), (1, 58), (5, -60)] {
            let f = case2_family(&int(k), &int(d2), default_primes()).unwrap();
            assert_eq!(f.eval_psi(3, 0).unwrap().coeff(3), int(12 * d2 + k * k));
            assert_eq!(f.eval_psi(5, 0).unwrap().coeff(3), int(260 * d2 + 35 * k * k));
            assert_eq!(case2_params(&f).unwrap(), Some((int(k), int(d2))));
        }
        assert_eq!(enumerate_n4_case2(&default_primes()).unwrap().len(), 60);
    }

    #[test]
    fn case2_criterion() {
        let p = default_primes();
        let s10 = case2_family(&int(1), &int(0), p.clone()).unwrap();
        let s50 = case2_family(&int(5), &int(0), p.clone()).unwrap();
        let s1m60 = case2_family(&int(1), &int(-60), p.clone()).unwrap();
        assert!(!iso_criterion_n4_case2(&s10, &s50).unwrap());
        let sigma = iso_witness_n4_case2(&s10, &s1m60).unwrap().unwrap();
        assert_eq!(sigma.higher(), &[int(0), int(1)]);
        assert!(is_isomorphism(&s10, &s1m60, &sigma).unwrap());
        let chern = AdamsFamily::chern(RingShape::univariate(4), p).unwrap();
        assert!(matches!(iso_witness_n4_case2(&s10, &chern), Err(Error::WrongRegime(_))));
    }

    #[test]
    fn classify_chern_variants() {
        // b_p = p, c_p = c_2 p(p-1)/2,
        // d_p = p(p-1)((p+1) d_2 + c_2^2 (p-2))/6
        for (c2, d2) in [(1i64, 6i64), (1, 0), (3, 4), (-1, 6), (5, 6), (-3, 16)] {
            let f = explicit(|p| {
                let p = p as i64;
                [
                    0,
                    p,
                    c2 * p * (p - 1) / 2,
                    p * (p - 1) * ((p + 1) * d2 + c2 * c2 * (p - 2)) / 6,
                ]
            });
            assert!(f.validate().unwrap().ok, "{c2} {d2}");
            match classify_n4(&f).unwrap() {
                N4Class::Chern { .. } => {}
                other => panic!("{other:?}"),
            }
        }
        let chern = AdamsFamily::chern(RingShape::univariate(4), default_primes()).unwrap();
        let N4Class::Chern { sigma } = classify_n4(&chern).unwrap() else {
            panic!()
        };
        assert_eq!(sigma, Automorphism::identity(&RingShape::univariate(4)).unwrap());
    }

    #[test]
    fn classify_quaternionic() {
        let p = default_primes();
        let f = case2_family(&int(5), &int(-58), p.clone()).unwrap();
        match classify_n4(&f).unwrap() {
            N4Class::Quaternionic { k, d2, .. } => assert_eq!((k, d2), (int(5), int(2))),
            other => panic!("{other:?}"),
        }
        // conjugate S(1, 4) by x - 3x^2 + 2x^3 and recover it
        let s14 = case2_family(&int(1), &int(4), p).unwrap();
        let tau = Automorphism::new(s14.shape(), -1, vec![int(-3), int(2)]).unwrap();
        let g = s14.conjugate(&tau).unwrap();
        match classify_n4(&g).unwrap() {
            N4Class::Quaternionic { k, d2, .. } => assert_eq!((k, d2), (int(1), int(4))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn case4() {
        // psi^p(x) = c_p x^2 + d_p x^3 with c_2 = 1, c_p = p otherwise
        let f = explicit(|p| {
            let c = if p == 2 { 1 } else { p as i64 };
            [0, 0, c, if p == 3 { 1 } else { 0 }]
        });
        assert!(f.validate().unwrap().ok, "{:?}", f.validate().unwrap());
        let g = f
            .conjugate(&Automorphism::new(f.shape(), -1, vec![int(4), int(7)]).unwrap())
            .unwrap();
        let sigma = iso_witness_n4_case4(&f, &g).unwrap().unwrap();
        assert!(is_isomorphism(&f, &g, &sigma).unwrap());
        let (cf, cg) = (classify_n4(&f).unwrap(), classify_n4(&g).unwrap());
        assert_eq!(cf.case(), 4);
        assert_eq!(
            cf.representative(f.primes()).unwrap(),
            cg.representative(f.primes()).unwrap()
        );
        let h = explicit(|p| {
            let c = if p == 2 { 1 } else { p as i64 };
            [0, 0, c, if p == 3 { 4 } else { 0 }]
        });
        assert!(h.validate().unwrap().ok);
        assert!(!iso_criterion_n4_case4(&f, &h).unwrap());
    }
}

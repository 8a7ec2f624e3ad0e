//! Test oracles and random generators shared by the integration tests.
//!
//! The oracles work on dense `Vec<BigInt>` coefficient lists and never call
//! into the library's polynomial kernel.

#![allow(dead_code)]

use std::collections::BTreeMap;

use lambda_lab::adams::{construct_existence_family, default_primes};
use lambda_lab::isoclass::case2_family_in;
use lambda_lab::{AdamsFamily, Automorphism, RingShape, TruncPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Dense = Vec<BigInt>;

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn dense_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Dense {
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `f(g(x))` mod `x^n` by Horner's rule.
pub fn dense_compose(f: &[BigInt], g: &[BigInt], n: usize) -> Dense {
    let mut acc = vec![BigInt::zero(); n];
    for c in f.iter().take(n).rev() {
        acc = dense_mul(&acc, g, n);
        acc[0] += c;
    }
    acc
}

pub fn dense_x(n: usize) -> Dense {
    let mut v = vec![BigInt::zero(); n];
    v[1] = BigInt::one();
    v
}

/// `f = x^p` mod `p`, with `x^p = 0` when `p >= n`.
pub fn dense_frobenius_ok(f: &[BigInt], p: u64) -> bool {
    let pb = BigInt::from(p);
    f.iter().enumerate().all(|(k, c)| {
        let want = if k as u64 == p { BigInt::one() } else { BigInt::zero() };
        (c - want).is_multiple_of(&pb)
    })
}

pub fn psi_dense(f: &AdamsFamily) -> BTreeMap<u64, Dense> {
    f.primes()
        .iter()
        .map(|&p| (p, f.eval_psi(p, 0).unwrap().dense()))
        .collect()
}

pub fn univariate_bound(f: &AdamsFamily) -> usize {
    f.shape().bound(0) as usize
}

/// Frobenius at every prime and commutation for every pair.
pub fn dense_valid(table: &BTreeMap<u64, Dense>, n: usize) -> bool {
    let rows: Vec<(&u64, &Dense)> = table.iter().collect();
    for (i, (&p, f)) in rows.iter().enumerate() {
        if !dense_frobenius_ok(f, p) {
            return false;
        }
        for (_, g) in &rows[i + 1..] {
            if dense_compose(f, g, n) != dense_compose(g, f, n) {
                return false;
            }
        }
    }
    true
}

/// `psi_R(sigma(x)) = sigma(psi_S(x))` at every prime.
pub fn dense_iso_ok(r: &AdamsFamily, s: &AdamsFamily, sigma: &Automorphism) -> bool {
    let n = univariate_bound(r);
    let sd = sigma.as_poly().dense();
    let (rt, st) = (psi_dense(r), psi_dense(s));
    rt.len() == st.len()
        && rt
            .iter()
            .all(|(p, f)| dense_compose(f, &sd, n) == dense_compose(&sd, &st[p], n))
}

pub fn family_from_dense(n: u32, rows: &BTreeMap<u64, Dense>) -> AdamsFamily {
    let psi = rows
        .iter()
        .map(|(&p, v)| (p, vec![TruncPoly::univariate(n, v.iter().cloned())]))
        .collect();
    AdamsFamily::from_psi(RingShape::univariate(n), &psi).unwrap()
}

pub fn random_automorphism(rng: &mut ChaCha8Rng, n: u32, spread: i64) -> Automorphism {
    let u: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
    let higher = (2..n).map(|_| big(rng.gen_range(-spread..=spread))).collect();
    Automorphism::new(&RingShape::univariate(n), u, higher).unwrap()
}

pub fn chern(n: u32) -> AdamsFamily {
    AdamsFamily::chern(RingShape::univariate(n), default_primes()).unwrap()
}

fn m(b: &BigInt) -> BigInt {
    b * (b - 1)
}

/// Hand-written check of the congruence and integrality conditions for
/// `psi^p(x) = b_p x + c_p x^2` with `c_p = c_2 m_p / m_2`.
fn n3_row_ok(p: u64, b: &BigInt, c: &BigInt) -> bool {
    let pb = BigInt::from(p);
    if !b.is_multiple_of(&pb) {
        return false;
    }
    if p == 2 {
        c.is_odd()
    } else {
        c.is_multiple_of(&pb)
    }
}

/// Linear coefficients satisfying condition (A), drawn from a few families
/// of sequences, with `b_2 != 0`.
pub fn random_condition_a_b(rng: &mut ChaCha8Rng) -> BTreeMap<u64, BigInt> {
    let primes = default_primes();
    loop {
        let b: BTreeMap<u64, BigInt> = match rng.gen_range(0..3) {
            0 => {
                let r = [1usize, 2, 4][rng.gen_range(0..3)];
                primes.iter().map(|&p| (p, num_traits::pow(big(p as i64), r))).collect()
            }
            1 => primes
                .iter()
                .map(|&p| {
                    let t = if p == 2 {
                        1
                    } else {
                        [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)]
                    };
                    (p, big(p as i64 * t))
                })
                .collect(),
            _ => primes
                .iter()
                .map(|&p| {
                    let t = if p == 2 { 2 } else { rng.gen_range(1..=8) };
                    (p, big(p as i64 * t))
                })
                .collect(),
        };
        // 2^{theta_2(b_2)} | b_p (b_p - 1)
        let b2 = &b[&2];
        let two_t = BigInt::one() << b2.trailing_zeros().unwrap();
        if b.values().all(|v| m(v).is_multiple_of(&two_t)) {
            return b;
        }
    }
}

/// A valid family on `Z[x]/(x^3)` with condition-(A) linear part, conjugated
/// by a random automorphism.
pub fn random_n3_family(rng: &mut ChaCha8Rng) -> AdamsFamily {
    loop {
        let b = random_condition_a_b(rng);
        let m2 = m(&b[&2]);
        // smallest c_2 step keeping every c_p integral
        let step = b.values().fold(BigInt::one(), |acc, v| {
            let need = &m2 / m2.gcd(&m(v));
            acc.lcm(&need)
        });
        if step.is_even() {
            continue;
        }
        let c2 = &step * big(2 * rng.gen_range(-20..20) + 1);
        let rows: BTreeMap<u64, Dense> = b
            .iter()
            .map(|(&p, v)| (p, vec![BigInt::zero(), v.clone(), &c2 * m(v) / &m2]))
            .collect();
        if !rows.iter().all(|(&p, r)| n3_row_ok(p, &r[1], &r[2])) {
            continue;
        }
        let f = family_from_dense(3, &rows);
        let tau = random_automorphism(rng, 3, 50);
        return f.conjugate(&tau).unwrap();
    }
}

/// `(c_2, d_2)` with `c_2` odd, `d_2` even and `d_2 + c_2^2 = 1` mod 3.
pub fn random_chern_params(rng: &mut ChaCha8Rng) -> (BigInt, BigInt) {
    let c2 = 2 * rng.gen_range(-50i64..50) + 1;
    let r = (1 - c2 * c2).rem_euclid(3);
    // d_2 = 0 mod 2 and d_2 = r mod 3
    let base = [0i64, 4, 2][r as usize];
    let d2 = base + 6 * rng.gen_range(-50i64..50);
    (big(c2), big(d2))
}

/// `psi^p(x) = p x + c_p x^2 + d_p x^3` on `Z[x]/(x^4)` from `(c_2, d_2)`.
pub fn chern_type_family(c2: &BigInt, d2: &BigInt) -> AdamsFamily {
    let rows = default_primes()
        .into_iter()
        .map(|p| {
            let pb = big(p as i64);
            let c = c2 * (&pb * &pb - &pb) / 2;
            let d = &pb * (&pb - 1) * ((&pb + 1) * d2 + c2 * c2 * (&pb - 2)) / 6;
            (p, vec![BigInt::zero(), pb, c, d])
        })
        .collect();
    family_from_dense(4, &rows)
}

/// A valid family on `Z[x]/(x^{n+1})`: an existence family, a line bundle
/// or (for `n = 3`) some `S(k, d_2)`, conjugated by a random automorphism.
pub fn random_extension(rng: &mut ChaCha8Rng, n: u32) -> AdamsFamily {
    let shape = RingShape::univariate(n + 1);
    let primes = default_primes();
    let base = match rng.gen_range(0..3) {
        0 if n == 3 => {
            let k = big([1, 5][rng.gen_range(0..2)]);
            let d2 = big(2 * rng.gen_range(0..30));
            case2_family_in(&shape, &k, &d2, primes).unwrap()
        }
        1 => AdamsFamily::chern(shape.clone(), primes).unwrap(),
        _ => {
            let b = primes
                .iter()
                .filter(|&&p| p > u64::from(n))
                .map(|&p| ((p, 0usize), big(p as i64 * rng.gen_range(2..=4))))
                .collect();
            construct_existence_family(&shape, &b, primes).unwrap()
        }
    };
    base.conjugate(&random_automorphism(rng, n + 1, 3)).unwrap()
}

/// Evaluates a symmetric polynomial at integer values of its variables.
pub fn eval_sym(f: &lambda_lab::symuniv::SymPoly, values: &BTreeMap<String, BigInt>) -> BigInt {
    let names = f.vars();
    f.terms()
        .map(|(e, c)| {
            e.iter().zip(names).fold(c.clone(), |acc, (&k, name)| {
                if k == 0 {
                    acc
                } else {
                    acc * num_traits::pow(values[name].clone(), k as usize)
                }
            })
        })
        .sum()
}

/// `e_1..e_k` of the given numbers, by expanding `prod (1 + a t)`.
pub fn elementary_values(a: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for x in a {
        let mut next = poly.clone();
        next.push(BigInt::zero());
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c * x;
        }
        poly = next;
    }
    (1..=k).map(|i| poly.get(i).cloned().unwrap_or_default()).collect()
}

pub fn random_ints(rng: &mut ChaCha8Rng, n: usize, spread: i64) -> Vec<BigInt> {
    (0..n).map(|_| big(rng.gen_range(-spread..=spread))).collect()
}

pub fn abs_min<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().map(|x| x.abs()).min().unwrap()
}

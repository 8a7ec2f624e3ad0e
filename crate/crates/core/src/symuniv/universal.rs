use serde::{Deserialize, Serialize};

use super::gauss::{to_elementary_groups, to_elementary_named, SymGroup};
use super::sympoly::{var_names, SymPoly};
use crate::error::{Error, Result};

/// Largest universal polynomials we agree to expand. The expansions are
/// literal, and term counts grow combinatorially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalCap {
    /// Largest `i` for `P_i`.
    pub max_i: usize,
    /// Largest `i * j` for `P_{i,j}`.
    pub max_ij: usize,
}

impl Default for UniversalCap {
    fn default() -> Self {
        UniversalCap { max_i: 4, max_ij: 8 }
    }
}

/// `e_k` of the given variables.
pub fn elementary_symmetric(vars: &[String], k: usize) -> Result<SymPoly> {
    if k > vars.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: vars.len(),
        });
    }
    let all: Vec<usize> = (0..vars.len()).collect();
    Ok(elementary_symmetric_in(vars, &all, k))
}

/// `e_k` of the variables at `subset`, as a polynomial over all of `vars`.
pub(crate) fn elementary_symmetric_in(vars: &[String], subset: &[usize], k: usize) -> SymPoly {
    let factors: Vec<SymPoly> = subset.iter().map(|&i| SymPoly::var(vars, i)).collect();
    elementary_of(vars, &factors, k)
}

/// `e_k(f_1, .., f_m)`: the `t^k` coefficient of `prod (1 + f_l t)`.
fn elementary_of(vars: &[String], factors: &[SymPoly], k: usize) -> SymPoly {
    let mut e: Vec<SymPoly> = vec![SymPoly::zero(vars); k + 1];
    e[0] = SymPoly::one(vars);
    for (count, f) in factors.iter().enumerate() {
        for j in (1..=k.min(count + 1)).rev() {
            let add = &e[j - 1] * f;
            e[j] = &e[j] + &add;
        }
    }
    e.swap_remove(k)
}

/// `Q_k` in `sigma1..sigmak`: the power sum `x_1^k + .. + x_k^k` written in
/// the elementary symmetric polynomials of the `x`'s.
pub fn newton_q(k: usize) -> Result<SymPoly> {
    if k == 0 {
        return Err(Error::IndexOutOfRange { index: 0, max: 0 });
    }
    let v = var_names("x", k);
    let mut p = SymPoly::zero(&v);
    for i in 0..k {
        p = &p + &SymPoly::var(&v, i).pow(k as u32);
    }
    to_elementary_named(&p, "sigma")
}

/// `P_i(s_1..s_i; sigma_1..sigma_i)`: the `t^i` coefficient of
/// `prod_{m,n <= i} (1 + xi_m eta_n t)`.
pub fn product_p(i: usize, cap: UniversalCap) -> Result<SymPoly> {
    if i == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            max: cap.max_i,
        });
    }
    if i > cap.max_i {
        return Err(Error::CapExceeded(format!("P_{i} with cap i <= {}", cap.max_i)));
    }
    let mut vars = var_names("xi", i);
    vars.extend(var_names("eta", i));
    let mut factors = Vec::with_capacity(i * i);
    for m in 0..i {
        for n in 0..i {
            factors.push(&SymPoly::var(&vars, m) * &SymPoly::var(&vars, i + n));
        }
    }
    let coeff = elementary_of(&vars, &factors, i);
    to_elementary_groups(
        &coeff,
        &[
            SymGroup {
                vars: (0..i).collect(),
                generator_names: var_names("s", i),
            },
            SymGroup {
                vars: (i..2 * i).collect(),
                generator_names: var_names("sigma", i),
            },
        ],
    )
}

/// `P_{i,j}(s_1..s_{ij})`: the `t^i` coefficient of
/// `prod_{l_1 < .. < l_j} (1 + xi_{l_1} .. xi_{l_j} t)` over `ij` variables.
pub fn composite_p(i: usize, j: usize, cap: UniversalCap) -> Result<SymPoly> {
    if i == 0 || j == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            max: cap.max_ij,
        });
    }
    if i * j > cap.max_ij {
        return Err(Error::CapExceeded(format!(
            "P_{{{i},{j}}} with cap ij <= {}",
            cap.max_ij
        )));
    }
    let n = i * j;
    let vars = var_names("xi", n);
    let factors: Vec<SymPoly> = subsets(n, j)
        .into_iter()
        .map(|s| {
            let mut e = vec![0; n];
            for l in s {
                e[l] = 1;
            }
            SymPoly::monomial(&vars, e, 1)
        })
        .collect();
    let coeff = elementary_of(&vars, &factors, i);
    to_elementary_groups(
        &coeff,
        &[SymGroup {
            vars: (0..n).collect(),
            generator_names: var_names("s", n),
        }],
    )
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

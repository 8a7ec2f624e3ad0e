//! Rewriting symmetric polynomials in elementary symmetric generators.
//!
//! Leading-monomial reduction: the lex-leading monomial `x^a` of a symmetric
//! polynomial has `a_1 >= a_2 >= ..`, and `e_1^{a_1-a_2} e_2^{a_2-a_3} ..`
//! has the same leading monomial, so subtracting a multiple of it strictly
//! lowers the leading monomial. Several variable groups (polynomials
//! symmetric in each group separately) reduce the same way, group by group.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::sympoly::{var_names, SymPoly};
use super::universal::elementary_symmetric_in;
use crate::error::{Error, Result};

/// A block of variables (indices into the polynomial's variable list, in
/// increasing order) and the names to give its generators `e_1..e_n`.
#[derive(Debug, Clone)]
pub struct SymGroup {
    pub vars: Vec<usize>,
    pub generator_names: Vec<String>,
}

/// Expresses a polynomial symmetric in all its variables through `e1..en`.
pub fn to_elementary(f: &SymPoly) -> Result<SymPoly> {
    to_elementary_named(f, "e")
}

/// As [`to_elementary`], naming the generators `{prefix}1..{prefix}n`.
pub fn to_elementary_named(f: &SymPoly, prefix: &str) -> Result<SymPoly> {
    let n = f.vars().len();
    to_elementary_groups(
        f,
        &[SymGroup {
            vars: (0..n).collect(),
            generator_names: var_names(prefix, n),
        }],
    )
}

/// Reduction for a polynomial symmetric in each group separately. Every
/// variable must belong to exactly one group.
pub fn to_elementary_groups(f: &SymPoly, groups: &[SymGroup]) -> Result<SymPoly> {
    let nvars = f.vars().len();
    let mut seen = vec![false; nvars];
    for g in groups {
        if g.generator_names.len() != g.vars.len() {
            return Err(Error::IndexOutOfRange {
                index: g.generator_names.len(),
                max: g.vars.len(),
            });
        }
        for w in g.vars.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::IndexOutOfRange { index: w[1], max: w[0] });
            }
        }
        for &v in &g.vars {
            if v >= nvars || seen[v] {
                return Err(Error::IndexOutOfRange { index: v, max: nvars });
            }
            seen[v] = true;
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::IndexOutOfRange {
            index: missing,
            max: nvars,
        });
    }
    for g in groups {
        if !f.is_symmetric_in(&g.vars) {
            return Err(Error::NotSymmetric);
        }
    }

    let out_vars: Vec<String> = groups.iter().flat_map(|g| g.generator_names.iter().cloned()).collect();

    // A symmetric polynomial is determined by its coefficients on monomials
    // whose exponents are nonincreasing within every group.
    let dominant = |e: &[u32]| groups.iter().all(|g| g.vars.windows(2).all(|w| e[w[0]] >= e[w[1]]));
    let project = |p: &SymPoly| {
        let mut q = SymPoly::zero(p.vars());
        for (e, c) in p.terms() {
            if dominant(e) {
                q.add_term(e.clone(), c.clone());
            }
        }
        q
    };

    let elementary: Vec<Vec<SymPoly>> = groups
        .iter()
        .map(|g| {
            (1..=g.vars.len())
                .map(|k| elementary_symmetric_in(f.vars(), &g.vars, k))
                .collect()
        })
        .collect();
    let mut power_cache: HashMap<(usize, usize, u32), SymPoly> = HashMap::new();

    let mut rest = project(f);
    let mut out = SymPoly::zero(&out_vars);
    while let Some((lead, c)) = rest.leading_term() {
        let lead = lead.clone();
        let c: BigInt = c.clone();
        let mut gen_exp: Vec<u32> = Vec::with_capacity(out_vars.len());
        let mut product = SymPoly::one(f.vars());
        for (gi, g) in groups.iter().enumerate() {
            let a: Vec<u32> = g.vars.iter().map(|&v| lead[v]).collect();
            for k in 0..a.len() {
                let next = a.get(k + 1).copied().unwrap_or(0);
                if a[k] < next {
                    return Err(Error::NotSymmetric);
                }
                let m = a[k] - next;
                gen_exp.push(m);
                if m > 0 {
                    let factor = power_cache
                        .entry((gi, k, m))
                        .or_insert_with(|| elementary[gi][k].pow(m));
                    product = &product * factor;
                }
            }
        }
        rest = &rest - &project(&product).scale(&c);
        out.add_term(gen_exp, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symuniv::universal::elementary_symmetric;

    fn power_sum(n: usize, k: u32) -> SymPoly {
        let v = var_names("x", n);
        let mut p = SymPoly::zero(&v);
        for i in 0..n {
            p = &p + &SymPoly::var(&v, i).pow(k);
        }
        p
    }

    /// Substitutes the defining elementary polynomials back in.
    fn expand_back(g: &SymPoly, n: usize) -> SymPoly {
        let v = var_names("x", n);
        let es: Vec<SymPoly> = (1..=n).map(|k| elementary_symmetric(&v, k).unwrap()).collect();
        g.substitute(&es).unwrap()
    }

    #[test]
    fn power_sums() {
        let p2 = power_sum(2, 2);
        let g = to_elementary(&p2).unwrap();
        assert_eq!(g.to_string(), "e1^2 - 2*e2");
        assert_eq!(expand_back(&g, 2), p2);

        let p3 = power_sum(3, 3);
        let g = to_elementary(&p3).unwrap();
        assert_eq!(g.to_string(), "e1^3 - 3*e1*e2 + 3*e3");
        assert_eq!(expand_back(&g, 3), p3);
    }

    #[test]
    fn product_of_two() {
        let v = var_names("x", 2);
        let f = &SymPoly::var(&v, 0) * &SymPoly::var(&v, 1);
        assert_eq!(to_elementary(&f).unwrap().to_string(), "e2");
    }

    #[test]
    fn rejects_asymmetric() {
        let v = var_names("x", 2);
        let f = &SymPoly::var(&v, 0).pow(2) + &SymPoly::var(&v, 1);
        assert_eq!(to_elementary(&f), Err(Error::NotSymmetric));
    }

    #[test]
    fn groups_must_partition_variables() {
        let v = var_names("x", 3);
        let f = SymPoly::one(&v);
        let g = SymGroup {
            vars: vec![0, 1],
            generator_names: var_names("e", 2),
        };
        assert!(to_elementary_groups(&f, &[g]).is_err());
    }
}

use num_bigint::BigInt;

use super::universal::newton_q;
use crate::adams::AdamsFamily;
use crate::arith::exact_div;
use crate::error::{Error, Result};
use crate::truncpoly::{RingShape, TruncPoly};

/// `lambda^1(x_var), lambda^2(x_var), ..`; `lambda^0 = 1` is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaTable {
    pub shape: RingShape,
    pub var: usize,
    pub lambdas: Vec<TruncPoly>,
}

impl LambdaTable {
    /// `lambda^n`, `n >= 1`.
    pub fn get(&self, n: usize) -> Option<&TruncPoly> {
        n.checked_sub(1).and_then(|i| self.lambdas.get(i))
    }
}

/// Solves the Newton formula
/// `psi^n - lambda^1 psi^{n-1} + .. + (-1)^{n-1} lambda^{n-1} psi^1 + (-1)^n n lambda^n = 0`
/// for `lambda^1..lambda^upto` of the generator `x_var`. Each division by `n`
/// must be exact.
pub fn lambda_from_adams(family: &AdamsFamily, var: usize, upto: usize) -> Result<LambdaTable> {
    let shape = family.shape().clone();
    if var >= shape.num_vars() {
        return Err(Error::IndexOutOfRange {
            index: var,
            max: shape.num_vars(),
        });
    }
    if upto == 0 {
        return Err(Error::IndexOutOfRange { index: 0, max: 0 });
    }
    // psi^k(x_var) for k = 1..upto
    let psi: Vec<TruncPoly> = (1..=upto as u64)
        .map(|k| Ok(family.psi_composite(k)?.swap_remove(var)))
        .collect::<Result<_>>()?;
    let mut lambdas: Vec<TruncPoly> = Vec::with_capacity(upto);
    for n in 1..=upto {
        // sum_{i=0}^{n-1} (-1)^i lambda^i psi^{n-i}
        let mut s = psi[n - 1].clone();
        for i in 1..n {
            let t = lambdas[i - 1].try_mul(&psi[n - i - 1])?;
            s = if i % 2 == 1 { s.try_sub(&t)? } else { s.try_add(&t)? };
        }
        if n % 2 == 0 {
            s = -&s;
        }
        let nb = BigInt::from(n);
        let mut terms = Vec::with_capacity(s.num_terms());
        for (e, c) in s.terms() {
            let q = exact_div(c, &nb).ok_or_else(|| Error::NonIntegralLambda {
                n,
                numerator: c.clone(),
            })?;
            terms.push((e.clone(), q));
        }
        lambdas.push(TruncPoly::from_terms(&shape, terms)?);
    }
    Ok(LambdaTable { shape, var, lambdas })
}

/// `psi^k = Q_k(lambda^1, .., lambda^k)` for `k = 1..upto`.
pub fn adams_from_lambda(table: &LambdaTable, upto: usize) -> Result<Vec<TruncPoly>> {
    if table.lambdas.len() < upto {
        return Err(Error::TableTooShort {
            len: table.lambdas.len(),
            needed: upto,
        });
    }
    (1..=upto)
        .map(|k| newton_q(k)?.eval_truncpoly(&table.lambdas[..k]))
        .collect()
}

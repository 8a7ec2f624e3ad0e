use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{RingShape, TruncPoly};
use crate::error::{Error, Result};

impl TruncPoly {
    /// Substitutes `inner[i]` for `x_i`: the result is `self(inner(x))`.
    ///
    /// Every inner polynomial must have zero constant term and all must share
    /// one shape, which becomes the shape of the result.
    pub fn compose(&self, inner: &[TruncPoly]) -> Result<TruncPoly> {
        let m = self.shape().num_vars();
        if inner.len() != m {
            return Err(Error::ArityMismatch {
                expected: m,
                got: inner.len(),
            });
        }
        let target: &RingShape = inner[0].shape();
        for (i, g) in inner.iter().enumerate() {
            if g.shape() != target {
                return Err(Error::ShapeMismatch);
            }
            if !g.constant_term().is_zero() {
                return Err(Error::NonzeroConstantTerm { index: i });
            }
        }

        // powers[i][e] = inner[i]^e, only as far as the outer polynomial needs
        let mut max_exp = vec![0u32; m];
        for (e, _) in self.terms() {
            for (i, &k) in e.iter().enumerate() {
                max_exp[i] = max_exp[i].max(k);
            }
        }
        let powers: Vec<Vec<TruncPoly>> = inner
            .iter()
            .zip(&max_exp)
            .map(|(g, &top)| {
                let mut pw = Vec::with_capacity(top as usize + 1);
                pw.push(TruncPoly::one(target));
                for k in 1..=top as usize {
                    let next = &pw[k - 1] * g;
                    pw.push(next);
                }
                pw
            })
            .collect();

        let mut out = TruncPoly::zero(target);
        for (e, c) in self.terms() {
            let mut term = TruncPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = &term * &powers[i][k as usize];
                    if term.is_zero() {
                        break;
                    }
                }
            }
            for (te, tc) in term.coeffs {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// One-variable shorthand for `self.compose(&[inner.clone()])`.
    pub fn compose1(&self, inner: &TruncPoly) -> Result<TruncPoly> {
        self.compose(std::slice::from_ref(inner))
    }

    /// Compositional inverse of a one-variable series `±x + a_2 x^2 + ...`.
    ///
    /// Solved degree by degree: if `f(g)` agrees with `x` below degree `k`,
    /// raising `g_k` by `t` raises the `x^k` coefficient of `f(g)` by `f_1 t`,
    /// so `t = -f_1 * err_k` since `f_1 = ±1`.
    pub fn comp_inverse(&self) -> Result<TruncPoly> {
        let shape = self.shape();
        if shape.num_vars() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                got: shape.num_vars(),
            });
        }
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm { index: 0 });
        }
        let u = self.coeff(1);
        if u != BigInt::one() && u != -BigInt::one() {
            return Err(Error::NotAUnit { coeff: u });
        }
        let r = shape.bound(0);
        let mut g = TruncPoly::univariate_in(shape, [BigInt::zero(), u.clone()]);
        for k in 2..r {
            let err = self.compose1(&g)?.coeff(k);
            if !err.is_zero() {
                g.add_term(vec![k], -(&u * err));
            }
        }
        debug_assert_eq!(self.compose1(&g)?, TruncPoly::var(shape, 0));
        Ok(g)
    }
}

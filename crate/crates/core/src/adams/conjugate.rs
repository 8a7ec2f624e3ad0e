use std::collections::BTreeMap;

use super::family::AdamsFamily;
use crate::error::{Error, Result};
use crate::isoclass::Automorphism;
use crate::truncpoly::TruncPoly;

impl AdamsFamily {
    /// The family `psi'^p = sigma^{-1} . psi^p . sigma`, stored as explicit
    /// per-prime coefficients. `sigma` is then an isomorphism from `self`
    /// to the result.
    pub fn conjugate(&self, sigma: &Automorphism) -> Result<AdamsFamily> {
        if self.shape().univariate_bound().is_none() {
            return Err(Error::InvalidShape("conjugation needs one variable".into()));
        }
        if sigma.shape() != self.shape() {
            return Err(Error::ShapeMismatch);
        }
        let s = sigma.as_poly();
        let s_inv = s.comp_inverse()?;
        let mut psi: BTreeMap<u64, Vec<TruncPoly>> = BTreeMap::new();
        for &p in self.primes() {
            let f = self.eval_psi(p, 0)?;
            psi.insert(p, vec![s_inv.compose1(&f.compose1(&s)?)?]);
        }
        AdamsFamily::from_psi(self.shape().clone(), &psi)
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::adams::family::{default_primes, CoeffSpec};
    use crate::adams::rule::CoeffRule;
    use crate::truncpoly::RingShape;

    #[test]
    fn identity_and_sign() {
        let s = RingShape::univariate(3);
        let quad = AdamsFamily::new(
            s.clone(),
            vec![CoeffSpec::from_rule(0, vec![2], CoeffRule::power(1, 1)).with_override(2, 1)],
            default_primes(),
        )
        .unwrap();
        let id = Automorphism::identity(&s).unwrap();
        assert!(quad.conjugate(&id).unwrap().same_operations(&quad).unwrap());

        let neg = Automorphism::new(&s, -1, vec![]).unwrap();
        let flipped = quad.conjugate(&neg).unwrap();
        for &p in default_primes().iter() {
            let c = quad.eval_psi(p, 0).unwrap().coeff(2);
            assert_eq!(flipped.eval_psi(p, 0).unwrap().coeff(2), -c);
        }
    }

    #[test]
    fn cubic_shift_moves_d2_by_sixty() {
        let s = RingShape::univariate(4);
        let one = BigInt::from(1);
        let s10 = AdamsFamily::univariate(
            4,
            vec![
                (1, CoeffRule::power(1, 2)),
                (2, CoeffRule::parse("p^2*(p^2-1)", &BigInt::from(12)).unwrap()),
                (3, CoeffRule::parse("p^2*(p^2-1)*(p^2-4)", &BigInt::from(360)).unwrap()),
            ],
            default_primes(),
        )
        .unwrap();
        let sigma = Automorphism::new(&s, 1, vec![BigInt::from(0), one]).unwrap();
        let t = s10.conjugate(&sigma).unwrap();
        assert_eq!(t.eval_psi(2, 0).unwrap().coeff(3), BigInt::from(-60));
        assert!(t.validate().unwrap().ok);
        let back = t.conjugate(&sigma.inverse()).unwrap();
        assert!(back.same_operations(&s10).unwrap());
    }
}

//! Benchmark inputs shared by the criterion targets.

use lambda_lab::adams::default_primes;
use lambda_lab::isoclass::{case2_family, Automorphism};
use lambda_lab::{AdamsFamily, RingShape, TruncPoly};

/// `(1 + x)^b - 1` on `Z[x]/(x^r)` with a nonzero constant-free tail.
pub fn series(r: u32, b: i64) -> TruncPoly {
    let shape = RingShape::univariate(r);
    let x = TruncPoly::var(&shape, 0);
    TruncPoly::one(&shape)
        .try_add(&x)
        .unwrap()
        .pow(b as u32)
        .try_sub(&TruncPoly::one(&shape))
        .unwrap()
}

/// `S(k, d_2)` and a conjugate of it by a fixed automorphism.
pub fn iso_pair(k: i64, d2: i64) -> (AdamsFamily, AdamsFamily) {
    let r = case2_family(&k.into(), &d2.into(), default_primes()).unwrap();
    let sigma = Automorphism::new(r.shape(), -1, vec![3.into(), (-7).into()]).unwrap();
    let s = r.conjugate(&sigma).unwrap();
    (r, s)
}

/// `(1 + x)^b - 1 - (b - 1) x`, invertible under composition.
pub fn unit_series(r: u32, b: i64) -> TruncPoly {
    let s = series(r, b);
    let x = TruncPoly::var(s.shape(), 0);
    s.try_sub(&x.scale(&(b - 1).into())).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use lambda_lab::isoclass::is_isomorphism;

    #[test]
    fn inputs_are_well_formed() {
        assert!(unit_series(8, 7).comp_inverse().is_ok());
        let (r, s) = iso_pair(1, 22);
        let sigma = Automorphism::new(r.shape(), -1, vec![3.into(), (-7).into()]).unwrap();
        assert!(is_isomorphism(&r, &s, &sigma).unwrap());
    }
}

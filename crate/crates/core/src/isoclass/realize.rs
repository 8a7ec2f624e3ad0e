use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::n3::{uniform_power, N3NormalForm};
use super::n4::N4Class;
use crate::adams::AdamsFamily;
use crate::error::Result;

/// Outcome of the necessary conditions for being the K-theory of a
/// torsionfree space, with the space when one is known to realize the class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Realizability {
    pub passes: bool,
    pub known_realized: Option<&'static str>,
}

/// On `Z[x]/(x^3)`: the class must be `S((p^r), k)` with `r` in {1, 2, 4}.
pub fn realizable_filter_n3(class: &N3NormalForm) -> Realizability {
    let N3NormalForm::Linear { data, .. } = class else {
        return Realizability {
            passes: false,
            known_realized: None,
        };
    };
    let r = uniform_power(&data.b);
    let passes = matches!(r, Some(1 | 2 | 4));
    let known_realized = match r {
        Some(1) if data.k.is_one() => Some("CP2"),
        Some(2) if data.k.is_one() => Some("HP2"),
        _ => None,
    };
    Realizability { passes, known_realized }
}

/// On `Z[x]/(x^4)`: the class must be the line bundle structure or one of
/// the sixty `S(k, d_2)`.
pub fn realizable_filter_n4(class: &N4Class) -> Realizability {
    match class {
        N4Class::Chern { .. } => Realizability {
            passes: true,
            known_realized: Some("CP3"),
        },
        N4Class::Quaternionic { k, d2, .. } => Realizability {
            passes: true,
            known_realized: (k.is_one() && d2.is_zero()).then_some("HP3"),
        },
        _ => Realizability {
            passes: false,
            known_realized: None,
        },
    }
}

/// The multiset `{b_{q,j}}` of linear coefficients of `psi^q(x_j)`, sorted.
pub fn linear_invariant(family: &AdamsFamily, q: u64) -> Result<Vec<BigInt>> {
    let mut out = (0..family.shape().num_vars())
        .map(|j| family.linear_coeff(q, j))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adams::{construct_existence_family, default_primes, CoeffRule};
    use crate::isoclass::{classify_n4, n4::case2_family, normal_form_n3, ClassDataN3};
    use crate::truncpoly::{RingShape, Truncation};
    use std::collections::BTreeMap;

    fn s(r: usize, k: i64) -> AdamsFamily {
        AdamsFamily::univariate(
            3,
            vec![
                (1, CoeffRule::power(1, r)),
                (
                    2,
                    CoeffRule::parse(
                        &format!("{k}*p^{r}*(p^{r}-1)"),
                        &BigInt::from(match r {
                            1 => 2,
                            2 => 12,
                            _ => 240,
                        }),
                    )
                    .unwrap(),
                ),
            ],
            default_primes(),
        )
        .unwrap()
    }

    #[test]
    fn n3_filter() {
        let hp2 = realizable_filter_n3(&normal_form_n3(&s(2, 1)).unwrap());
        assert_eq!(
            hp2,
            Realizability {
                passes: true,
                known_realized: Some("HP2")
            }
        );
        let cp2 = realizable_filter_n3(&normal_form_n3(&s(1, 1)).unwrap());
        assert_eq!(cp2.known_realized, Some("CP2"));
        let cubes = ClassDataN3 {
            b: default_primes()
                .into_iter()
                .map(|p| (p, BigInt::from(p).pow(3)))
                .collect(),
            g: BigInt::from(2),
            cond_b_primes: vec![],
            k: BigInt::from(1),
        };
        let sigma = crate::isoclass::Automorphism::identity(&RingShape::univariate(3)).unwrap();
        assert!(!realizable_filter_n3(&N3NormalForm::Linear { data: cubes, sigma }).passes);
        let op = realizable_filter_n3(&normal_form_n3(&s(4, 7)).unwrap());
        assert!(op.passes);
        assert_eq!(op.known_realized, None);
        assert_eq!(
            realizable_filter_n3(&normal_form_n3(&s(2, 3)).unwrap()),
            Realizability {
                passes: true,
                known_realized: None
            }
        );
    }

    #[test]
    fn n4_filter() {
        let p = default_primes();
        let s10 = classify_n4(&case2_family(&BigInt::from(1), &BigInt::from(0), p.clone()).unwrap()).unwrap();
        assert_eq!(realizable_filter_n4(&s10).known_realized, Some("HP3"));
        let s52 = classify_n4(&case2_family(&BigInt::from(5), &BigInt::from(2), p.clone()).unwrap()).unwrap();
        assert_eq!(
            realizable_filter_n4(&s52),
            Realizability {
                passes: true,
                known_realized: None
            }
        );
        let chern = classify_n4(&AdamsFamily::chern(RingShape::univariate(4), p).unwrap()).unwrap();
        assert_eq!(realizable_filter_n4(&chern).known_realized, Some("CP3"));
    }

    #[test]
    fn invariant_separates_existence_families() {
        let shape = RingShape::new(vec![Truncation::Finite(3), Truncation::Finite(3)], 1).unwrap();
        let primes = vec![2, 3, 5, 7];
        let table = |x: i64, y: i64| -> BTreeMap<(u64, usize), BigInt> {
            [3u64, 5, 7]
                .iter()
                .flat_map(|&p| {
                    [
                        ((p, 0), BigInt::from(x * p as i64)),
                        ((p, 1), BigInt::from(y * p as i64)),
                    ]
                })
                .collect()
        };
        let f = construct_existence_family(&shape, &table(2, 3), primes.clone()).unwrap();
        let g = construct_existence_family(&shape, &table(3, 2), primes.clone()).unwrap();
        let h = construct_existence_family(&shape, &table(2, 4), primes).unwrap();
        assert_eq!(linear_invariant(&f, 5).unwrap(), linear_invariant(&g, 5).unwrap());
        assert_ne!(linear_invariant(&f, 5).unwrap(), linear_invariant(&h, 5).unwrap());
        assert_eq!(linear_invariant(&f, 2).unwrap(), vec![BigInt::from(2), BigInt::from(2)]);
    }
}

//! Isomorphism classes of one-variable structures on `Z[x]/(x^n)`.

mod automorphism;
mod bound;
mod common;
mod conjc;
mod n3;
mod n4;
mod realize;
mod solve;

pub use crate::arith::{theta, Valuation};
pub use automorphism::Automorphism;
pub use bound::{extension_bound, top_shift_sigma, ExtensionPrefix};
pub use common::{is_isomorphism, iso_failure, linear_seq, LinearSeq, Obstruction, Witness};
pub use conjc::{conjc_check, ConjcReport, Probe};
pub use n3::{
    condition_a, condition_b_primes, count_n3, enumerate_n3, g_of, iso_criterion_n3, iso_witness_n3, normal_form_n2,
    normal_form_n3, realizable_n2, seq_from, uniform_power, ClassDataN3, N3NormalForm,
};
pub use n4::{
    case2_family, case2_family_in, case2_params, case2_rules, chern_sigma, classify_n4, enumerate_n4_case2,
    iso_criterion_n4_case2, iso_criterion_n4_case4, iso_witness_n4_case2, iso_witness_n4_case4, N4Class,
};
pub use realize::{linear_invariant, realizable_filter_n3, realizable_filter_n4, Realizability};
pub use solve::{iso_search, iso_solve, IsoResult};

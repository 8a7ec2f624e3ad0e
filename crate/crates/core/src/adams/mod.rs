//! Prime-indexed Adams operations on truncated polynomial rings.
//!
//! A family gives `psi^p(x_i)` for each prime `p` in a finite prime set.
//! Such a family comes from a (unique) lambda-ring structure exactly when
//! the operations commute and satisfy `psi^p(x) = x^p` mod `p`.

mod conjugate;
mod existence;
mod family;
mod io;
mod rule;
mod validate;

pub use existence::construct_existence_family;
pub use family::{default_primes, power_series_coeffs, AdamsFamily, CoeffSpec, DEFAULT_PRIME_BOUND};
pub use rule::{parse_poly_in_p, CoeffRule};
pub use validate::{closed_form_ok, closed_form_verdict, CommuteFailure, FrobeniusFailure, ValidationReport};

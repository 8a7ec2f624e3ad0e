//! Adams operations on truncated polynomial rings: validation, isomorphism
//! testing and the classification tables for small truncations.

pub mod adams;
pub mod arith;
pub mod error;
pub mod isoclass;
pub mod symuniv;
pub mod truncpoly;

pub use adams::AdamsFamily;
pub use error::{Error, Result};
pub use isoclass::{Automorphism, IsoResult};
pub use truncpoly::{RingShape, TruncPoly, Truncation};

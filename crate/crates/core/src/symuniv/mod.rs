//! Universal lambda-ring polynomials and the Newton correspondence between
//! lambda-operations and Adams operations.

mod gauss;
mod newton;
mod sympoly;
mod universal;

pub use gauss::{to_elementary, to_elementary_groups, to_elementary_named, SymGroup};
pub use newton::{adams_from_lambda, lambda_from_adams, LambdaTable};
pub use sympoly::{var_names, SymPoly, SymPolyJson, SymTermJson};
pub use universal::{composite_p, elementary_symmetric, newton_q, product_p, UniversalCap};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring shapes differ")]
    ShapeMismatch,
    #[error("expected {expected} inner polynomials, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("inner polynomial {index} has a nonzero constant term")]
    NonzeroConstantTerm { index: usize },
    #[error("linear coefficient {coeff} is not a unit")]
    NotAUnit { coeff: BigInt },
    #[error("exponent {exponent:?} lies outside the ring shape")]
    ExponentOutOfRange { exponent: Vec<u32> },
    #[error("invalid ring shape: {0}")]
    InvalidShape(String),

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("polynomial is not symmetric in its variables")]
    NotSymmetric,
    #[error("universal polynomial request exceeds cap: {0}")]
    CapExceeded(String),
    #[error("lambda^{n} is not integral: coefficient {numerator} not divisible by {n}")]
    NonIntegralLambda { n: usize, numerator: BigInt },
    #[error("lambda table holds {len} operations, {needed} needed")]
    TableTooShort { len: usize, needed: usize },

    #[error("prime {0} is not in the active prime set")]
    PrimeOutOfSet(u64),
    #[error("coefficient rule {rule} is not integral at p = {prime}")]
    NonIntegralRule { rule: String, prime: u64 },
    #[error("prime factor {0} is not covered by the family")]
    UncoveredPrimeFactor(u64),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("condition (A) fails for the linear coefficients")]
    ConditionAViolated,
    #[error("families are outside the regime of this criterion: {0}")]
    WrongRegime(String),
    #[error("linear coefficient at p = {0} is zero")]
    ZeroLinearCoefficient(u64),
    #[error("extension does not reduce to the given structure")]
    PrefixMismatch,
    #[error("family is not a valid Adams family: {0}")]
    InvalidFamily(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

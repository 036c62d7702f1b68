use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to
/// reproduce the failing check by hand.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("operation is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),

    #[error("element {identity} is not an identity: witness {witness}")]
    BadIdentity { identity: usize, witness: usize },

    #[error("element {zero} is not a zero: witness {witness}")]
    BadZero { zero: usize, witness: usize },

    #[error("element {0} is not an idempotent")]
    NotIdempotent(usize),

    #[error("element index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("size guard exceeded: {requested} elements requested, limit {limit}")]
    SizeGuardExceeded { requested: u128, limit: usize },

    #[error("partial injections live on different carriers ({0} vs {1})")]
    CarrierMismatch(usize, usize),

    #[error("invalid partial injection: {0}")]
    InvalidInjection(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("element does not belong to this extension: {0}")]
    ForeignElement(String),

    #[error("labels {s} and {t} are not mutually inverse")]
    NotAnInversePair { s: usize, t: usize },

    #[error("base semigroup has no zero")]
    BaseHasNoZero,

    #[error("base semigroup is not a monoid")]
    BaseNotMonoid,

    #[error("relation is not a congruence: {0}")]
    NotACongruence(String),

    #[error("point sequence contains duplicates")]
    DuplicatePoints,

    #[error("rank {rank} exceeds bound {bound}")]
    RankExceeded { rank: usize, bound: usize },

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("set is not an ideal")]
    NotAnIdeal,

    #[error("inner set is not a proper subset of the outer set")]
    NotProperSubset,

    #[error("tuple set is not {0}-symmetric")]
    NotKSymmetric(usize),

    #[error("base series is invalid: {0}")]
    BaseSeriesInvalid(String),

    #[error("series variant {0} is defined for n = 1 only")]
    VariantNeedsRankOne(String),

    #[error("parameter too small: {0}")]
    ParameterTooSmall(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field of size {size} exceeds the cap of {cap} elements")]
    FieldTooLarge { size: u64, cap: u64 },

    #[error("no irreducible polynomial of degree {e} found over GF({p})")]
    NoIrreducible { p: u32, e: u32 },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("coefficient `{0}` is not an element of the field")]
    CoefficientNotInField(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("Gröbner computation exceeded the step limit of {limit} pair reductions")]
    StepLimit { limit: u64 },

    #[error("quotient ring is infinite-dimensional")]
    InfiniteQuotient,

    #[error("input ideal is not homogeneous")]
    NotHomogeneous,

    #[error("input is not a monomial ideal")]
    NotMonomial,

    #[error("dilation changed the degree from {original} to {degenerate}")]
    DegreeMismatch { original: usize, degenerate: usize },

    #[error("gin did not stabilize within {trials} trials ({distinct} distinct initial ideals seen)")]
    GinUnstable {
        trials: usize,
        distinct: usize,
        seen: Vec<String>,
    },

    #[error("gin stabilized on a monomial ideal that is not Borel-fixed: {ideal}")]
    GinNotBorel { ideal: String },

    #[error("enumeration of {count} items exceeds the cap of {cap}")]
    EnumerationCap { count: u128, cap: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("plane does not lie in the chart {0}")]
    OutsideChart(String),

    #[error("{0}")]
    Format(String),
}

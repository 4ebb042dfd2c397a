use thiserror::Error;

/// Domain and input errors shared by the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("square root of negative value {0}")]
    NegativeSqrt(String),

    #[error("zero denominator in rational value")]
    ZeroDenominator,

    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),

    #[error("cannot parse {0:?} as a decimal number")]
    ParseDecimal(String),

    #[error("factor {factor} vanishes at a = {a}")]
    FactorVanishes { factor: String, a: String },

    #[error("parameter a = {0} lies outside the identity's domain")]
    ExcludedParameter(String),

    #[error("sequence element a[{index}] = {value} must have absolute value > 1")]
    ElementNotAdmissible { index: usize, value: String },

    #[error("sequence must be nonempty")]
    EmptySequence,

    #[error("linear form requires a nonzero slope")]
    DegenerateForm,

    #[error("uk+v must stay > 1 (u > 0) or < -1 (u < 0) on k = {m}..={n}")]
    TelescopeCondition { m: i64, n: i64 },

    #[error("index bounds violated: need n >= m >= {min_m}, got m = {m}, n = {n}")]
    InvalidBounds { m: i64, n: i64, min_m: i64 },

    #[error("gamma function argument {0} must be positive")]
    NonpositiveGammaArgument(String),

    #[error("zeta is only evaluated for real s > 1, got s = {0}")]
    ZetaDomain(String),

    #[error("integral lower limit {0} must exceed 1")]
    QuadratureLowerLimit(String),

    #[error("invalid interval: lower limit {lower} exceeds upper limit {upper}")]
    InvalidInterval { lower: String, upper: String },

    #[error("sieve limit {limit} outside supported range [{min}, {max}]")]
    SieveLimit { limit: u64, min: u64, max: u64 },

    #[error("prime search exhausted the sieve ceiling {cap}")]
    SearchCapExceeded { cap: u64 },

    #[error("operation needs about {required_mb} MiB, limit is {limit_mb} MiB")]
    MemoryBudget { required_mb: u64, limit_mb: u64 },

    #[error("precision must lie in [{min}, {max}] bits, got {bits}")]
    PrecisionRange { bits: u32, min: u32, max: u32 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u32),
    #[error("digit {digit} at position {position} is out of range for base {base}")]
    InvalidDigit {
        digit: u32,
        position: usize,
        base: u32,
    },
    #[error("non-canonical digit vector: most significant digit is zero")]
    NonCanonical,
    #[error("valuation of zero is undefined")]
    UndefinedValuation,
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("oracle input {n} exceeds the oracle cap {cap}")]
    OracleRange { n: String, cap: u64 },
    #[error("base {0} is not prime")]
    NonPrimeBase(u32),
    #[error("ordering violated: {0}")]
    Ordering(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("tuple length {r} is outside 1..={base}")]
    Range { r: usize, base: u32 },
    #[error("construction needs r > b and x >= 2 (got b={b}, r={r}, x={x})")]
    ConstructionDomain { b: u32, r: usize, x: u32 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown inequality `{0}`")]
    UnknownInequality(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("field with {q} elements exceeds the enumeration guard {guard}")]
    TooLarge { q: String, guard: u64 },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("rank deficient: expected rank {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },
    #[error("column multiplier at index {0} is zero")]
    ZeroMultiplier(usize),
    #[error("{what}: {count} cases exceed the enumeration guard {guard}")]
    Infeasible { what: &'static str, count: String, guard: u64 },
    #[error("characteristic {p} divides k = {k}")]
    CharacteristicDividesK { p: u64, k: usize },
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("p = {p} divides C({k}, {r})")]
    BinomialDivisible { p: u64, k: usize, r: usize },
    #[error("k = {0} must be odd")]
    KEven(usize),
    #[error("columns {0} and {1} are equal")]
    DuplicateColumns(usize, usize),
    #[error("subset condition violated by columns {witness:?}")]
    ConditionViolated { witness: Vec<usize> },
    #[error("{erased} erasures exceed the correctable maximum {max}")]
    TooManyErasures { erased: usize, max: usize },
    #[error("received word is inconsistent at position {position}")]
    Inconsistent { position: usize },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

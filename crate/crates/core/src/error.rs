use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("operands belong to different polynomial rings")]
    RingMismatch,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("exponent overflow (exponents are limited to {max})", max = crate::monomial::MAX_EXPONENT)]
    ExponentOverflow,

    #[error("too many variables: {0} (limit {max})", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("the ideal is the whole ring")]
    UnitIdeal,

    #[error("expected a zero-dimensional ideal, found dimension {0}")]
    PositiveDimensional(usize),

    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),

    #[error("denominator vanishes: {0}")]
    ZeroDenominator(String),

    #[error("not a circuit: {0}")]
    NotCircuit(String),

    #[error("characteristic {0} is not supported here: {1}")]
    Characteristic(u64, String),

    #[error("retry limit exceeded: {0}")]
    RetryLimit(String),

    #[error("missing data: {0}")]
    Missing(String),

    #[error("problem file, line {line}: {message}")]
    Problem { line: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }

    /// Budget exhaustion, as opposed to a mathematical or input failure.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

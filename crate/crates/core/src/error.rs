use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient list is empty")]
    Empty,
    #[error("polynomial is not monic (leading coefficient {0})")]
    NotMonic(String),
    #[error("polynomial degree {0} is not even and positive")]
    OddDegree(usize),
    #[error("q = {0} is not a prime power")]
    NotPrimePower(String),
    #[error("functional equation a_i = q^(g-i) a_(2g-i) fails at index {index}")]
    FunctionalEquationViolation { index: usize },
    #[error("root provably off the circle |z| = sqrt(q): {0}")]
    RootModulusViolation(String),
    #[error("precision exhausted: needed {needed} bits, cap is {cap}")]
    PrecisionExhausted { needed: u64, cap: u32 },
    #[error("state space of {0} profiles is too large to enumerate")]
    EnumerationTooLarge(u128),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed row at line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

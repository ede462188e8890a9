use thiserror::Error;

/// Errors raised across the library.
///
/// [`Error::Invariant`] marks an internal consistency failure (an arithmetic
/// identity that should hold by construction did not); every other variant
/// is a usage or input problem.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("valuation of zero is infinite")]
    ZeroValuation,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("factorization budget exceeded: unfactored cofactor {0}")]
    Unfactored(String),
    #[error("polynomial must not be the zero polynomial")]
    ZeroPolynomial,
    #[error("degree must be at least {required}, got {actual}")]
    DegreeTooSmall { required: usize, actual: usize },
    #[error("polynomial vanishes identically modulo {0}")]
    VanishesModPrime(u64),
    #[error("{0} divides the leading coefficient")]
    PrimeDividesLeading(u64),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

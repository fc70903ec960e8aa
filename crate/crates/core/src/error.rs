use thiserror::Error;

/// Errors raised by the measures and constructions in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input has length {got}, expected {expected}")]
    InputArity { expected: usize, got: usize },

    #[error("resource bound exceeded: {0}")]
    Resource(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("symbol {symbol} is not in the alphabet of size {alphabet}")]
    Alphabet { symbol: u8, alphabet: u8 },

    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(u8, u8),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no verified separating family after {attempts} attempts (ell = {ell})")]
    ProbabilisticFailure { attempts: u32, ell: usize },

    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

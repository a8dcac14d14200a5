use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument failed a precondition (non-prime modulus, bound exceeded, ...).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// An internal self-check failed; this always signals a bug, never bad input.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    /// The h-adic elimination needed more precision than the hard cap allows.
    #[error("valuation too large: precision cap h^{cap} exhausted for p={p}, h={h}")]
    ValuationTooLarge { p: u64, h: u64, cap: u32 },

    /// A malformed row in a reference-rank file.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

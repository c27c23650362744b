use thiserror::Error;

/// Errors raised by the streaming model and the algorithms built on it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range 1..={len}")]
    OutOfBounds { index: usize, len: usize },

    #[error("invalid substring [{l}, {r_exclusive}) for text of length {len}")]
    InvalidRange { l: usize, r_exclusive: usize, len: usize },

    #[error("single-pass violation: {0}")]
    SinglePass(String),

    #[error("model violation: {0}")]
    Model(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(
        "mapping enumeration would visit {} tuples, above the limit of {limit}; \
         use the dp mapping search or force the run",
        .tuples.map(|t| t.to_string()).unwrap_or_else(|| "more than 2^128".into())
    )]
    Intractable { tuples: Option<u128>, limit: u128 },

    #[error("symbol code {0} is reserved for padding")]
    ReservedSymbol(u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for violations of the asymmetric streaming model: unequal
    /// lengths, second passes, and the enumeration tractability guard.
    pub fn is_model_violation(&self) -> bool {
        matches!(self, Error::SinglePass(_) | Error::Model(_) | Error::Intractable { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

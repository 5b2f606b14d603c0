use thiserror::Error;

use crate::textio::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("index {index} out of range for {kind} coordinates (have {len})")]
    IndexOutOfRange {
        kind: &'static str,
        index: usize,
        len: usize,
    },

    #[error("{0} is zero")]
    ZeroInput(&'static str),

    #[error("parity violation: {0}")]
    ParityViolation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("certificate mismatch at {path}: {message}")]
    Mismatch { path: String, message: String },

    /// A construction produced a certificate that failed exact re-verification.
    #[error("internal certificate error in {step}: {message}")]
    Internal { step: &'static str, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

use thiserror::Error;

/// Errors raised by the library.
///
/// The split mirrors the CLI exit codes: `InvalidInput` and `Parse` are
/// validation failures, `Consistency` is a numerical self-check that did not
/// hold.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown label {label} for ring {ring}")]
    UnknownLabel { label: String, ring: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numeric consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

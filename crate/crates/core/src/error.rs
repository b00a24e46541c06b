use thiserror::Error;

/// Errors produced by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Image or plane dimensions do not fit together.
    #[error("structural error: {0}")]
    Structural(String),
    /// A data table or input file is unusable for the requested operation.
    #[error("configuration error: {0}")]
    Config(String),
    /// A file could not be decoded.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}

pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: msg.into(),
    }
}

use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} index {index} out of range (size {size})")]
    Dimension {
        what: &'static str,
        index: usize,
        size: usize,
    },
    #[error("apposition: {0}")]
    Apposition(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("concept count exceeds the ceiling of {ceiling}")]
    Ceiling { ceiling: usize },
    #[error("taxonomy: {0}")]
    Taxonomy(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("theorem violated: {0}")]
    TheoremViolation(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("format: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Format(e.to_string())
    }
}

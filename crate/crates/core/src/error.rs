//! Error type shared by the whole crate.

use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by loaders, training, evaluation and model IO.
#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed input file. `line` is 1-based.
    #[error("parse error at {path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    /// Invalid or inconsistent configuration, rejected before any work.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Shape/compatibility mismatch between data and model.
    #[error("{0}")]
    Mismatch(String),

    /// Domain error hit while executing an otherwise valid request.
    #[error("{0}")]
    Domain(String),

    /// Model file violates the schema or an ensemble invariant.
    #[error("model file error: {0}")]
    Model(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

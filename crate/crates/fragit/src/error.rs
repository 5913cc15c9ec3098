use std::path::PathBuf;

use thiserror::Error;

use crate::smarts::SmartsError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("unsupported element '{symbol}' at atom {atom}")]
    UnsupportedElement { symbol: String, atom: usize },

    #[error("atom index {index} out of range 1..={len}")]
    AtomIndex { index: usize, len: usize },

    #[error("fragment ordinal {index} out of range 1..={len}")]
    FragmentIndex { index: usize, len: usize },

    #[error("perception failed at atom {atom}: {message}")]
    Perception { atom: usize, message: String },

    #[error("pattern '{name}': {source}")]
    Pattern {
        name: String,
        #[source]
        source: SmartsError,
    },

    #[error("pattern '{name}': {message}")]
    PatternShape { name: String, message: String },

    #[error("explicit pair {a},{b} is not a bond")]
    InvalidPair { a: usize, b: usize },

    #[error("configuration: {0}")]
    Config(String),

    #[error("config line {line}, key '{key}': {message}")]
    ConfigSyntax {
        line: usize,
        key: String,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(path: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.to_string(),
            line,
            message: message.into(),
        }
    }
}

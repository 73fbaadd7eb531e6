use thiserror::Error;

/// Errors raised by code construction, decoding contracts and the simulation harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("field arithmetic: {0}")]
    Domain(&'static str),

    #[error("no primitive polynomial tabulated for field degree {0}")]
    UnsupportedField(u32),

    #[error("infeasible code parameters: {0}")]
    Construction(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    Length { expected: usize, actual: usize },

    #[error("contract violation at position {position}: {reason}")]
    Contract { position: usize, reason: &'static str },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    #[error("bracket [{low_db}, {high_db}] dB does not straddle the target BER {target}")]
    Bracket {
        low_db: f64,
        high_db: f64,
        target: f64,
    },

    #[error("parse error: {0}")]
    Literal(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

//! Command line error type. Every variant maps to exit code 2; verdict
//! outcomes (counterexamples found) are not errors and are handled by
//! the runner instead.

use bowtie_core::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}, binding {name}: {source}")]
    Binding {
        line: usize,
        name: String,
        source: AlgebraError,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

use thiserror::Error;

/// A problem with the contents of an input file.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}, column {column}: invalid AS number {token:?}")]
    BadAsNumber { line: usize, column: usize, token: String },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] pathdiv_core::Error),
}

impl FormatError {
    pub(crate) fn malformed(line: usize, message: impl Into<String>) -> Self {
        FormatError::Malformed { line, message: message.into() }
    }

    /// 1-based line of the offending input, when there is one.
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::BadAsNumber { line, .. } | FormatError::Malformed { line, .. } => Some(*line),
            FormatError::Invalid(_) => None,
        }
    }
}

use thiserror::Error;

/// Failure to parse one of the textual notations (Milnor sequences, ideals,
/// fixture expressions).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?}: {reason}")]
pub struct ParseError {
    pub input: String,
    pub reason: String,
}

impl ParseError {
    pub fn new(input: &str, reason: impl Into<String>) -> Self {
        ParseError {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("column cap exceeded: degree {degree} needs {columns} columns, cap is {cap}")]
    CapExceeded {
        degree: usize,
        columns: usize,
        cap: usize,
    },

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("relation {identity} fails on {element} in degree {degree}")]
    Relation {
        identity: String,
        element: String,
        degree: i64,
    },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "E_DIMENSION",
            Error::CapExceeded { .. } => "E_CAP",
            Error::Domain(_) => "E_DOMAIN",
            Error::Schema(_) => "E_SCHEMA",
            Error::Relation { .. } => "E_RELATION",
            Error::Parse(_) => "E_PARSE",
            Error::Json(_) => "E_SCHEMA",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

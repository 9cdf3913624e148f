use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("arity conflict for {kind} `{name}`: used with arity {first} and {second}")]
    ArityConflict {
        kind: &'static str,
        name: String,
        first: usize,
        second: usize,
    },

    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed record: {0}")]
    Malformed(String),

    /// A prover emitted a proof the checker rejects. Always a bug.
    #[error("integrity error: {0}")]
    Integrity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}

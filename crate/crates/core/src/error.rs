use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input: unknown point, missing table entry,
    /// non-positive radius and the like.
    #[error("input error: {0}")]
    Input(String),

    /// An exhaustive computation was asked to run beyond its supported size.
    #[error("capacity error: {what} has size {size}, limit is {limit}")]
    Capacity { what: &'static str, size: usize, limit: usize },

    /// A line of a text input could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

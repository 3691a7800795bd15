use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("no s-t path satisfies the constraints")]
    Infeasible,

    #[error("{what} exceeds limit: {count} > {limit}")]
    TooLarge {
        what: &'static str,
        count: u128,
        limit: u128,
    },

    #[error("scheduler `{scheduler}` cannot handle this input: {reason}")]
    Unsupported {
        scheduler: &'static str,
        reason: String,
    },

    #[error("{0}")]
    Format(String),
}

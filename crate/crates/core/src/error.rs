use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("unknown group spec {0:?} (expected trivial, cyclic:m, sym:3 or a JSON file path)")]
    UnknownGroup(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("group G_{n} has order {order}, above the materialization limit {limit} (set WREATHREP_MAX_ORDER to raise it)")]
    TooLarge { n: usize, order: u128, limit: u128 },

    #[error("action is not multiplicity free: {0}")]
    NotMultiplicityFree(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

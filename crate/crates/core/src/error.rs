use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid multiset: {0}")]
    InvalidSpec(String),

    #[error("{what} has {count} items, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        count: String,
        cap: u64,
    },

    #[error("transposition ({i},{j}) is out of range for length {len}")]
    IndexOutOfRange { i: usize, j: usize, len: usize },

    #[error("state has no oriented symbol")]
    NoOrientedSymbol,

    #[error("invalid arguments: {0}")]
    InvalidArgs(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("partition {0:?} cannot be split into pairs of equal rows")]
    UnpairableShape(Vec<usize>),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

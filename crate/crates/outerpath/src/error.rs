use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{what} supports n <= {limit}, got {got}")]
    Scope {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("vertex {0} out of range")]
    VertexRange(u32),

    #[error("input is not a tree: {0}")]
    NotATree(&'static str),

    #[error("graph is not outerplanar")]
    NotOuterplanar,

    #[error("graph is not maximal outerplanar: {0}")]
    NotMaximalOuterplanar(String),

    #[error("invalid mop: {0}")]
    InvalidMop(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

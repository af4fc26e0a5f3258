use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected rank {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("malformed bundle: {0}")]
    Malformed(String),
    #[error("unsupported kind: {0}")]
    UnsupportedKind(String),
    #[error("degenerate form: {0}")]
    Degenerate(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("empty admissible region: window {window}, margin {margin}")]
    EmptyRegion { window: usize, margin: usize },
    #[error("window {window} too small for margin {margin}: {reason}")]
    WindowTooSmall { window: usize, margin: usize, reason: String },
    #[error("arity mismatch: template has {expected} slots, sample has {got}")]
    Arity { expected: usize, got: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

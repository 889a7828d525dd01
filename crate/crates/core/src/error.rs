use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry {value} out of range 0..={bound} at {place}")]
    EntryOutOfRange {
        value: i64,
        bound: i64,
        place: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("coordinate collision: {0}")]
    CoordinateCollision(String),
    #[error("stale handle {0}")]
    StaleHandle(u64),
    #[error("no chain between the requested endpoints")]
    NoChain,
    #[error("reduction failure: {0}")]
    ReductionFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

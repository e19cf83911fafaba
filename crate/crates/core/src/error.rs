use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational `{0}` (expected \"p/q\" or \"p\")")]
pub struct ParseRationalError(pub String);

/// Problems found while reading or validating an instance or capacity map.
/// `entry` is the 1-based position of the offending `(i|...)` entry.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("entry {entry}: syntax error: {message}")]
    Syntax { entry: usize, message: String },
    #[error("entry {entry}: message {index} listed more than once")]
    Duplicate { entry: usize, index: usize },
    #[error("entry {entry}: index {index} out of range [1, {n}]")]
    OutOfRange { entry: usize, index: usize, n: usize },
    #[error("entry {entry}: message {index} lists itself")]
    SelfReference { entry: usize, index: usize },
    #[error("message {index} has no entry")]
    Missing { index: usize },
    #[error("instance has no messages")]
    Empty,
    #[error("n = {0} exceeds the supported maximum of 64 messages")]
    TooLarge(usize),
    #[error("message index {index} out of range [1, {n}]")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("server set must be nonempty")]
    EmptyServer,
    #[error("server set {0:?} overridden more than once")]
    DuplicateServer(Vec<usize>),
    #[error("capacity {0} is negative")]
    NegativeCapacity(String),
    #[error("capacity map is for n = {cap} but instance has n = {inst}")]
    SizeMismatch { cap: usize, inst: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
}

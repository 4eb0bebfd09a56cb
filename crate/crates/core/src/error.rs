use thiserror::Error;

/// Errors raised by the library. Each variant maps to one class of failure
/// the CLI distinguishes in its exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex pair ({0}, {1}) has an endpoint outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("invalid vertex pair ({0}, {1}): endpoints must differ")]
    InvalidPair(usize, usize),
    #[error("graph6 format error at byte {offset}: {reason}")]
    Format { offset: usize, reason: String },
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("{d} does not divide q-1 = {group_order}")]
    Divisibility { d: u64, group_order: u64 },
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("input is not a tree: {0}")]
    NotATree(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

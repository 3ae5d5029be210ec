use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 65536]")]
    InvalidModulus(u64),
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("entry {value} is not a residue modulo {p}")]
    EntryOutOfRange { value: u64, p: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal arithmetic invariant violated: {0}")]
    Arithmetic(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}


use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("elements live in different algebras")]
    HostMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("degree {needed} exceeds the certified truncation bound {bound}")]
    Truncation { needed: i64, bound: i64 },
    #[error("hypotheses not met: {0}")]
    Hypothesis(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code associated with this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Hypothesis(_) | Error::OutOfScope(_) => 1,
            Error::Parse { .. } | Error::Config(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

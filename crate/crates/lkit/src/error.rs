use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parameter error: {0}")]
    Param(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("form is not symmetric")]
    NotSymmetric,
    #[error("subspace is not Lagrangian: {0}")]
    NotLagrangian(String),
    #[error("invalid chart: {0}")]
    Chart(String),
    #[error("move rejected: {0}")]
    Move(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

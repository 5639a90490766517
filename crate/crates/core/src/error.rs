use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("matrix is not an involution")]
    NotInvolution,
    #[error("qubit count must be at least 1")]
    ZeroQubits,
    #[error("invalid pauli string: {0}")]
    InvalidPauli(String),
    #[error("symplectic part is not the identity")]
    NotPauli,
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("search exhausted without reaching cost limit {limit}")]
    SearchExhausted { limit: usize },
    #[error("{what}: n = {n} exceeds limit {limit}")]
    Guard {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("forced outcome contradicts a deterministic measurement")]
    ImpossibleOutcome,
    #[error("invalid branch: {0}")]
    Branch(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

use alloc::string::String;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("unsupported ring form: {0}")]
    Unsupported(String),
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("missing invertibility certificate for {0}")]
    MissingCertificate(String),
    #[error("enumeration infeasible: {0}")]
    Infeasible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid module data: {0}")]
    InvalidModule(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

use thiserror::Error;

use crate::digraph::DigraphError;
use crate::mcc::MccError;
use crate::oracle::OracleError;
use crate::plane::PlaneError;
use crate::sosi::SosiError;

/// Coarse classification used by the CLI and the C API to pick exit/status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The caller supplied invalid data.
    Input,
    /// A self-check failed; indicates a bug rather than bad input.
    Internal,
    /// An exhaustive oracle exceeded its configured budget.
    Budget,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Mcc(#[from] MccError),
    #[error(transparent)]
    Sosi(#[from] SosiError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("invalid JSON input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Input(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Digraph(_) | Error::Json(_) | Error::Input(_) => ErrorKind::Input,
            Error::Mcc(e) => match e {
                MccError::Internal(_) => ErrorKind::Internal,
                _ => ErrorKind::Input,
            },
            Error::Sosi(e) => e.kind(),
            Error::Plane(e) => e.kind(),
            Error::Oracle(e) => match e {
                OracleError::Budget { .. } => ErrorKind::Budget,
                _ => ErrorKind::Input,
            },
        }
    }
}

use std::path::PathBuf;

/// Errors produced while building rings, counting, or evaluating closed forms.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("modulus {poly} is not irreducible of degree {degree} over F_{p}")]
    Reducible { poly: String, p: u64, degree: u32 },

    #[error("ring would have {size} elements, above the cap of {cap}")]
    SizeCap { size: u128, cap: usize },

    #[error("invalid ring table: {0}")]
    InvalidTable(String),

    #[error("unsupported quotient: {0}")]
    Quotient(String),

    #[error("cannot parse element {literal:?}: {reason}")]
    Element { literal: String, reason: String },

    #[error("{0} is not a unit")]
    NotUnit(String),

    #[error("ring {0} is not local")]
    NotLocal(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("outside formula domain: {0}")]
    Domain(String),

    #[error("inexact division in {0}")]
    InexactDivision(String),

    #[error("{0}")]
    Invalid(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }
}

use std::fmt;

use thiserror::Error;

/// A failing axiom together with the first basis tuple on which the two
/// sides disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub axiom: String,
    pub index: Vec<usize>,
    pub label: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}", self.axiom, self.label)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular map: {0}")]
    Singular(String),
    #[error("validation failed: {0}")]
    Validation(Witness),
    #[error("antipode image is not central: {0}")]
    Centrality(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("not cyclic in degree {0}; take the invariant subobject first")]
    Cyclicity(usize),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

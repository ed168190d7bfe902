use crate::detect::Witness;

/// Errors produced by graph construction, detection, and the coloring pipeline.
///
/// `LemmaViolation` marks a structural fact that holds for every graph in the
/// accepted class; seeing one at runtime means the input left the class after
/// admission or the caller fed an unchecked graph.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("enumeration budget of {steps} expansion steps exceeded")]
    BudgetExceeded { steps: u64 },

    #[error("{what} supports at most {limit} vertices, got {actual}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("class violation: {} witness {:?}", .0.kind, .0.vertices)]
    ClassViolation(Box<Witness>),

    #[error("violated invariant `{claim}`: {detail}")]
    LemmaViolation { claim: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Error {
        Error::InvalidInput(msg.into())
    }

    pub fn lemma(claim: &'static str, detail: impl Into<String>) -> Error {
        Error::LemmaViolation {
            claim,
            detail: detail.into(),
        }
    }

    /// The witness carried by a `ClassViolation`, if that is what this is.
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Error::ClassViolation(w) => Some(w),
            _ => None,
        }
    }
}

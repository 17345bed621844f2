use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid inequality: {0}")]
    InvalidInequality(String),

    #[error("not a facet: {0}")]
    NotAFacet(String),

    #[error("guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("rank hierarchy incomplete: {unranked} facet(s) have no ridge to any ranked facet")]
    HierarchyIncomplete { unranked: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

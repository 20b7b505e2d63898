use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not spherical: {0}")]
    NotSpherical(String),
    #[error("not a rational homology sphere: {0}")]
    NotQhs(String),
    #[error("reducible surgery: {0}")]
    Reducible(String),
    #[error("V-sequence unavailable: {0}")]
    VSequenceUnavailable(String),
    #[error("inapplicable: {0}")]
    Inapplicable(String),
    #[error("search budget of {budget} nodes exhausted")]
    Inconclusive { budget: u64 },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

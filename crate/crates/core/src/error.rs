use crate::semantics::ModelError;
use crate::syntax::{ClauseError, NotClausal, ParseError, UnknownFragment};
use crate::translate::TranslateError;

/// A configured resource ceiling was hit before the answer was known.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("resource cap exceeded: {what} would exceed the limit of {limit}")]
pub struct LimitExceeded {
    pub what: &'static str,
    pub limit: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    NotClausal(#[from] NotClausal),
    #[error(transparent)]
    Clause(#[from] ClauseError),
    #[error(transparent)]
    Fragment(#[from] UnknownFragment),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

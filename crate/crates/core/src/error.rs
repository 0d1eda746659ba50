use thiserror::Error;

use crate::lang::ParseError;

/// Failures raised by pattern queries and the computations built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scan horizon of {horizon} letters exceeded")]
    HorizonExceeded { horizon: usize },

    #[error("pattern has only {available} under letters, asked for #{requested}")]
    FiniteUnders { requested: usize, available: usize },

    #[error("card-name spelling covers 13 cards, block {block} requested")]
    SpellCardExhausted { block: usize },

    #[error("a periodic word needs at least one down letter")]
    NoDown,

    #[error("a periodic word cannot be empty")]
    EmptyWord,

    #[error("operation needs a purely periodic pattern, got `{0}`")]
    NotPeriodic(String),

    #[error("operation needs a pattern starting with an under letter, got `{0}`")]
    StartsWithDown(String),

    #[error("deck of {size} cards: {reason}")]
    InvalidScript { size: usize, reason: String },

    #[error("gave up after {limit} dealing rounds")]
    DepthExceeded { limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("the step rule needs an odd term, got {0}")]
    EvenTerm(u64),

    #[error("unknown special-size name `{0}`")]
    UnknownName(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

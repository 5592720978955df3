use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed automaton, order or BWT text.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("character {0:?} is not in the alphabet")]
    ForeignChar(char),

    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    /// The operation is only defined on a narrower class of automata.
    #[error("domain error: {0}")]
    Domain(String),

    /// A caller-supplied argument violates the operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("automaton recognizes the empty language")]
    EmptyLanguage,

    #[error("query out of range: {0}")]
    Query(String),

    /// Inconsistent BWT or index payload.
    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}

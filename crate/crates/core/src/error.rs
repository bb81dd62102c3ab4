use thiserror::Error;

use crate::syntax::VarName;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("letter {letter:?} at position {pos} is not in the alphabet")]
    LetterNotInAlphabet { letter: char, pos: usize },

    #[error("reserved character {0:?} cannot be used as a letter")]
    ReservedLetter(char),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("variable {0} is not bound by the valuation")]
    UnboundVariable(VarName),

    #[error("{what} count exceeds the configured cap of {cap}")]
    CountCapExceeded { what: &'static str, cap: usize },

    #[error("automaton exceeds the configured cap of {cap} states")]
    StateCapExceeded { cap: usize },

    #[error("domain of variable {0} is infinite; possibility semantics requires finite domains")]
    DomainNotFinite(VarName),

    #[error("domain of variable {0} denotes the empty language")]
    EmptyDomain(VarName),

    #[error("expression is not simple: a variable occurs more than once")]
    NotSimple,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

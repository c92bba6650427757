use thiserror::Error;

/// Errors raised by automaton construction and the decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("state {state} out of range for {states} states")]
    StateOutOfRange { state: usize, states: usize },
    #[error("relation has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown letter {0}")]
    UnknownLetter(String),
    #[error("duplicate letter name {0:?}")]
    DuplicateLetter(String),
    #[error("initial state set is empty")]
    EmptyInitial,
    #[error("lasso period must be non-empty")]
    EmptyPeriod,
    #[error("word must be non-empty")]
    EmptyWord,
    #[error("acceptance index must be at least 1")]
    EmptyAcceptance,
    #[error("operation requires {expected} acceptance, found {found}")]
    WrongAcceptance { expected: &'static str, found: &'static str },
    #[error("automaton is not deterministic")]
    NotDeterministic,
    #[error("automaton is not complete")]
    NotComplete,
    #[error("operation requires an explicit alphabet")]
    NotExplicit,
    #[error("alphabets differ: {0}")]
    AlphabetMismatch(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

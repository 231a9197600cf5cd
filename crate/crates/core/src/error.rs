use alloc::string::String;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax {
        offset: usize,
        message: &'static str,
    },
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("ordinal underflow: the left operand exceeds the right one")]
    Underflow,
    #[error("division by the zero ordinal")]
    DivisionByZero,
    #[error("position out of range")]
    OutOfRange,
    #[error("the requested word is empty")]
    EmptyWord,
    #[error("exponent {0} is too large to materialize as an expression")]
    ExponentTooLarge(String),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

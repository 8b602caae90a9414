use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by constructions whose preconditions fail.
///
/// Law violations found by the checkers are not errors; they are reported
/// through [`crate::report::ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("position {position} out of range for arity {arity}")]
    BadPosition { position: usize, arity: usize },
    #[error("object mismatch at position {position}: expected {expected}, found {found}")]
    ObjectMismatch {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },
    #[error("undefined in table: {0}")]
    Undefined(String),
    #[error("wrong kind of value: {0}")]
    WrongKind(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

use thiserror::Error;

/// Errors shared across the library.
///
/// Everything here is a hard failure: the evaluators never round, clamp or
/// guess. A closed form that does not reduce to an integer, or a product
/// that would overflow the fixed-width fast path, surfaces as an `Error`
/// instead of a silently wrong value.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} requires a positive integer, got 0")]
    ZeroArgument(&'static str),

    #[error("{0} requires a non-empty argument list")]
    EmptyArguments(&'static str),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("arity mismatch for `{name}`: expected {expected} arguments, got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },

    #[error("brute-force guard: {required} loop iterations exceed the limit of {limit}")]
    GuardExceeded { required: u128, limit: u64 },

    #[error("closed form did not reduce to an integer: {0}")]
    NonIntegral(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("table function: {0}")]
    Table(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

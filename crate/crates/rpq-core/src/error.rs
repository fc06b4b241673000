//! Error types shared across the library.

use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    /// Base parameters violate a structural invariant (e.g. p = q).
    #[error("degenerate base: {0}")]
    DegenerateBase(String),
    /// An operation was called outside its domain (vanishing family
    /// denominator, divergent series, exponent outside the rational tower).
    #[error("domain error: {0}")]
    Domain(String),
    /// A grid point is degenerate for the requested identity check
    /// (zero structure-constant denominator, undefined omega limit, ...).
    #[error("degenerate point: {0}")]
    Degenerate(String),
    /// A deformation function was evaluated at a pole; the message names the
    /// vanishing subexpression.
    #[error("pole: vanishing denominator in `{0}`")]
    Pole(String),
    /// Lexical error while scanning an expression.
    #[error("lexical error at byte {pos}: unexpected character {ch:?}")]
    Lexical { pos: usize, ch: char },
    /// Syntax error while parsing an expression.
    #[error("syntax error at byte {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    /// `^` was followed by something other than a literal half-integer.
    #[error("non-literal exponent at byte {pos}: exponents must be integers or (k/2) literals")]
    NonLiteralExponent { pos: usize },
}

pub type Result<T> = std::result::Result<T, CoreError>;

//! Crate-wide error type.

use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A word that was supposed to be a permutation of 1..=n is not one.
    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    /// A pattern family was instantiated with inconsistent parameters.
    #[error("invalid pattern parameters: {0}")]
    InvalidPattern(String),

    /// A constraint set contains the same pattern twice.
    #[error("duplicate pattern in constraint set: {0}")]
    DuplicatePattern(String),

    /// Exhaustive enumeration was asked to go beyond the configured cap.
    #[error("resource cap exceeded: requested n = {requested}, cap = {cap} (raise PERMCHEB_MAX_N to override)")]
    ResourceCap { requested: usize, cap: usize },

    /// Text that failed to parse as a pattern, constraint, path, or rule file.
    #[error("parse error: {0}")]
    Parse(String),

    /// Division by zero in exact arithmetic.
    #[error("division by zero in exact arithmetic")]
    DivisionByZero,

    /// A power-series expansion was requested at a pole.
    #[error("denominator vanishes at the origin; no power-series expansion")]
    PoleAtOrigin,

    /// A quadratic-extension element that should have collapsed to a plain
    /// rational function did not; indicates a mis-transcribed formula.
    #[error("expression does not reduce to a rational function in x: {0}")]
    Irreducible(String),

    /// A closed form was asked for a pattern shape it does not cover.
    #[error("no closed form for this pattern: {0}")]
    UnsupportedPattern(String),

    /// A closed form was asked outside its stated parameter range.
    #[error("parameters outside the stated range: {0}")]
    OutOfStatedRange(String),

    /// Truncated-series arithmetic would have dropped a nonzero coefficient.
    #[error("truncation overflow: {0}")]
    Truncation(String),

    /// An input permutation fails a precondition (e.g. must avoid 132).
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error types shared across the crate.

use serde::Serialize;
use thiserror::Error;

/// Parse failure for expressions, interval literals and coefficient lists.
///
/// `position` is a 1-based character offset into the input; end of input is
/// reported at `len + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("parse error at {position}: expected {expected}, found {found}")]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

impl ParseError {
    pub fn new(position: usize, expected: impl Into<String>, found: impl Into<String>) -> Self {
        Self {
            position,
            expected: expected.into(),
            found: found.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlieError {
    /// A point lies outside the domain an operation requires.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation hit an undefined sub-expression (log of a non-positive
    /// number, division by zero, overflow).
    #[error("evaluation error at x = {x}: {reason}")]
    Eval { x: f64, reason: String },

    /// An orbit left the closure of the map's domain. `step` is the first
    /// iterate index k with gᵏ(x) outside, `value` that iterate, `start` the
    /// orbit's starting point (the witness of the self-map failure).
    #[error("iterate {step} of x = {start} escaped the domain (value {value})")]
    Escape { start: f64, step: usize, value: f64 },

    /// A numeric routine failed to converge within its iteration budget.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Invalid configuration (solver settings, missing window, ...).
    #[error("config error: {0}")]
    Config(String),

    #[error("{0}")]
    Parse(#[from] ParseError),
}

impl PlieError {
    /// Machine-readable error kind used by the CLI diagnostic stream.
    pub fn kind(&self) -> &'static str {
        match self {
            PlieError::Domain(_) => "domain",
            PlieError::Eval { .. } => "eval",
            PlieError::Escape { .. } => "escape",
            PlieError::Numeric(_) => "numeric",
            PlieError::Config(_) => "config",
            PlieError::Parse(_) => "parse",
        }
    }
}

//! Expression grammar for candidate maps given as text.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?            ^ is right-associative
//! atom   := number | 'x' | fn '(' expr ')' | '(' expr ')'
//! fn     := exp | log | sqrt | abs
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` reads as `-(x^2)`. Implicit
//! multiplication is rejected: `2x` is a parse error.

mod ast;
mod detect;
mod parser;

pub use ast::{BinaryOp, ExprAst, Func};
pub use detect::{detect_family, DetectedFamily};
pub use parser::parse;

pub(crate) use detect::{as_affine, as_power};

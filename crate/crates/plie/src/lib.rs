//! Complete solution theory of the iterative functional equation
//!
//! ```text
//! g³(x) = 3·g(x) − 2·x          (gᵏ = k-fold composition, g⁰ = id)
//! ```
//!
//! for continuous self-maps `g: I → I` of a real interval, together with the
//! multiplicatively conjugated Boros equation
//!
//! ```text
//! f³(x) = f(x)³ / x²
//! ```
//!
//! for self-maps of subintervals of `(0, +∞)`.
//!
//! The crate provides, as a library:
//!
//! * [`domain`] — intervals with extended-real endpoints, candidate self-maps
//!   (affine, power-law, piecewise-linear grid maps, parsed expressions),
//!   iteration, orbits, self-map and monotonicity diagnostics;
//! * [`algebra`] — the exact big-integer coefficient recurrence behind the
//!   iterate expansion `g^{n+3} = aₙ·g² + bₙ·g + cₙ·id`, its closed form,
//!   characteristic-polynomial roots with exact multiplicities, and the
//!   inverse-map linear recurrence `x_{n+3} = (3/2)x_{n+2} − (1/2)x_n`;
//! * [`classify`] — the closed-form solution families on each interval kind,
//!   residual verification on grids, and nearest-family classification;
//! * [`boros`] — log/exp conjugation between the additive and multiplicative
//!   equations and the Boros solution families;
//! * [`solver`] — seeded derivative-free residual minimisation over monotone
//!   piecewise-linear self-maps, used to falsify the existence of solutions
//!   outside the closed-form families;
//! * [`expr`] — a small expression grammar for candidate maps given as text.
//!
//! The `plie` binary exposes all of it as subcommands emitting JSON/CSV
//! reports; `examples/` contains one runnable example per capability.

pub mod algebra;
pub mod boros;
pub mod classify;
pub mod cli;
pub mod domain;
pub mod error;
pub mod expr;
pub mod solver;

pub use domain::{Interval, IntervalKind, Orbit, SelfMap};
pub use error::{ParseError, PlieError};

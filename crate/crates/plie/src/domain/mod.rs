//! Intervals, candidate self-maps and iteration.

mod grid;
mod interval;
mod map;

pub use grid::{log_spaced_grid, sample_grid, windowed_grid, DEFAULT_WINDOW};
pub use interval::{Interval, IntervalKind};
pub use map::{MapKind, Monotonicity, Orbit, SelfMap, SelfMapReport};

pub(crate) use map::{affine_ast, power_ast};

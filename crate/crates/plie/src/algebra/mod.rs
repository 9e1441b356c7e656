//! Exact integer/rational machinery: the iterate-coefficient recurrence, its
//! closed form, characteristic-polynomial roots, and the inverse-map linear
//! recurrence.

mod charpoly;
mod coeffs;
mod inverse;
mod residuals;

pub use charpoly::{char_roots, CharPoly, Root, RootSet};
pub use coeffs::{b_closed_form, b_difference, iterate_coeffs, CoeffStepper, CoeffTriple};
pub use inverse::{anti_monotone_check, fit_abc, inverse_recurrence_step, AntiMonotoneReport, RecurrenceFit};
pub use residuals::{expansion_residual, limit_functional, linear_iterate_form_residual, LimitFunctionalReport};

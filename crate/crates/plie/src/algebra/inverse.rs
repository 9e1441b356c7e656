//! The inverse-map linear recurrence and its closed-form fit.
//!
//! Orbits (xₙ) of the inverse G of a decreasing solution satisfy
//! x_{n+3} = (3/2)x_{n+2} − (1/2)xₙ, whose characteristic polynomial
//! 2r³ − 3r² + 1 factors as (r−1)²(2r+1). Every orbit therefore fits
//! xₙ = A·n + B + C·(−1/2)ⁿ, and anti-monotonicity of the orbit forces
//! A = 0.

use serde::Serialize;

use crate::domain::Orbit;
use crate::error::PlieError;

/// One step of the recurrence: (3/2)x_{n+2} − (1/2)xₙ.
pub fn inverse_recurrence_step(x_n: f64, _x_n1: f64, x_n2: f64) -> f64 {
    1.5 * x_n2 - 0.5 * x_n
}

/// Coefficients of the closed form xₙ = A·n + B + C·(−1/2)ⁿ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecurrenceFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl RecurrenceFit {
    pub fn extrapolate(&self, n: usize) -> f64 {
        self.a * n as f64 + self.b + self.c * (-0.5f64).powi(n as i32)
    }
}

/// Solve the 3×3 system matching x₀, x₁, x₂; the system is always
/// nonsingular, with the closed-form solution
/// A = (2x₂ − x₁ − x₀)/3, B = (5x₀ + 8x₁ − 4x₂)/9, C = 4(x₀ − 2x₁ + x₂)/9.
pub fn fit_abc(x0: f64, x1: f64, x2: f64) -> RecurrenceFit {
    let a = (2.0 * x2 - x1 - x0) / 3.0;
    let b = (5.0 * x0 + 8.0 * x1 - 4.0 * x2) / 9.0;
    let c = 4.0 * (x0 - 2.0 * x1 + x2) / 9.0;
    RecurrenceFit { a, b, c }
}

/// Whether the alternating differences (−1)ⁿ(x_{n+1} − xₙ) keep one sign
/// (zeros allowed); `first_violation` is the difference index n at which the
/// sign first flips.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AntiMonotoneReport {
    pub holds: bool,
    pub first_violation: Option<usize>,
}

pub fn anti_monotone_check(orbit: &Orbit) -> Result<AntiMonotoneReport, PlieError> {
    if orbit.values.len() < 3 {
        return Err(PlieError::Config(
            "anti-monotone check needs an orbit of length at least 3".into(),
        ));
    }
    let mut sign = 0i8;
    for (n, d) in orbit.differences().enumerate() {
        let alt = if n % 2 == 0 { d } else { -d };
        let s = if alt > 0.0 {
            1
        } else if alt < 0.0 {
            -1
        } else {
            0
        };
        if s != 0 {
            if sign != 0 && s != sign {
                return Ok(AntiMonotoneReport {
                    holds: false,
                    first_violation: Some(n),
                });
            }
            sign = s;
        }
    }
    Ok(AntiMonotoneReport {
        holds: true,
        first_violation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Interval, SelfMap};

    #[test]
    fn recurrence_step_examples() {
        assert_eq!(inverse_recurrence_step(0.0, 0.0, 0.0), 0.0);
        assert_eq!(inverse_recurrence_step(1.0, 1.0, 1.0), 1.0);
        assert_eq!(inverse_recurrence_step(1.0, 0.0, 0.5), 0.25);
    }

    #[test]
    fn fit_examples() {
        let f = fit_abc(7.0, 7.0, 7.0);
        assert_eq!((f.a, f.b, f.c), (0.0, 7.0, 0.0));

        let f = fit_abc(1.0, 0.0, 0.5);
        assert!(f.a.abs() < 1e-15);
        assert!((f.b - 1.0 / 3.0).abs() < 1e-15);
        assert!((f.c - 2.0 / 3.0).abs() < 1e-15);

        let f = fit_abc(0.0, 1.0, 2.0);
        assert_eq!((f.a, f.b, f.c), (1.0, 0.0, 0.0));
    }

    #[test]
    fn fit_reconstructs_initial_values() {
        for (x0, x1, x2) in [(0.3, -1.2, 5.0), (2.0, 2.0, -7.0), (0.0, 1e-8, -1e-8)] {
            let f = fit_abc(x0, x1, x2);
            assert!((f.extrapolate(0) - x0).abs() < 1e-12);
            assert!((f.extrapolate(1) - x1).abs() < 1e-12);
            assert!((f.extrapolate(2) - x2).abs() < 1e-12);
        }
    }

    #[test]
    fn fit_satisfies_recurrence_for_all_n() {
        let f = fit_abc(0.7, -0.3, 1.1);
        for n in 0..30 {
            let direct = f.extrapolate(n + 3);
            let stepped =
                inverse_recurrence_step(f.extrapolate(n), f.extrapolate(n + 1), f.extrapolate(n + 2));
            assert!((direct - stepped).abs() < 1e-9 * (1.0 + direct.abs()));
        }
    }

    #[test]
    fn anti_monotone_examples() {
        let constant = Orbit {
            start: 1.0,
            values: vec![1.0; 6],
        };
        assert!(anti_monotone_check(&constant).unwrap().holds);

        // orbit of G(x) = (1−x)/2 from 1 alternates around the fixed point
        let g = SelfMap::affine(-0.5, 0.5, Interval::closed(0.0, 1.0));
        let orbit = g.orbit(1.0, 8).unwrap();
        assert!(anti_monotone_check(&orbit).unwrap().holds);

        // a translation orbit is monotone, so the alternating signs flip at 1
        let t = Orbit {
            start: 0.0,
            values: vec![0.0, 1.0, 2.0, 3.0],
        };
        let r = anti_monotone_check(&t).unwrap();
        assert!(!r.holds);
        assert_eq!(r.first_violation, Some(1));

        let short = Orbit {
            start: 0.0,
            values: vec![0.0, 1.0],
        };
        assert!(anti_monotone_check(&short).is_err());
    }
}

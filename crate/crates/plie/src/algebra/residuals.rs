//! Residuals of the iterate-expansion identities.

use serde::Serialize;

use crate::algebra::coeffs::iterate_coeffs;
use crate::domain::SelfMap;
use crate::error::PlieError;

/// g^{n+3}(x) − [aₙ·g²(x) + bₙ·g(x) + cₙ·x]. Zero (up to rounding scaled by
/// the coefficient size) whenever the map solves the equation.
pub fn expansion_residual(map: &SelfMap, n: usize, x: f64) -> Result<f64, PlieError> {
    let orbit = map.orbit(x, n + 3)?;
    let t = iterate_coeffs(n);
    let combo = t.a_f64() * orbit.values[2] + t.b_f64() * orbit.values[1] + t.c_f64() * x;
    Ok(orbit.values[n + 3] - combo)
}

/// g^{n+3}(x) − [(n+3)·g(x) − (n+2)·x]: the simplified expansion valid for
/// increasing solutions (those with g²(x) − g(x) = g(x) − x).
pub fn linear_iterate_form_residual(map: &SelfMap, n: usize, x: f64) -> Result<f64, PlieError> {
    let orbit = map.orbit(x, n + 3)?;
    let linear = (n as f64 + 3.0) * orbit.values[1] - (n as f64 + 2.0) * x;
    Ok(orbit.values[n + 3] - linear)
}

/// The sequence g^{n+3}(x)/bₙ together with its limit −g²(x)/2 + g(x) − x/2.
#[derive(Debug, Clone, Serialize)]
pub struct LimitFunctionalReport {
    pub x: f64,
    /// g^{n+3}(x)/bₙ for n = 0..=n_max.
    pub lhs_sequence: Vec<f64>,
    pub rhs: f64,
}

impl LimitFunctionalReport {
    pub fn final_gap(&self) -> f64 {
        self.lhs_sequence
            .last()
            .map(|v| (v - self.rhs).abs())
            .unwrap_or(f64::NAN)
    }
}

/// Evaluate the limit law at `x` for n up to `n_max`.
pub fn limit_functional(
    map: &SelfMap,
    x: f64,
    n_max: usize,
) -> Result<LimitFunctionalReport, PlieError> {
    let orbit = map.orbit(x, n_max + 3)?;
    let mut lhs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let b = iterate_coeffs(n).b_f64();
        lhs.push(orbit.values[n + 3] / b);
    }
    let g1 = orbit.values[1];
    let g2 = orbit.values[2];
    let rhs = -0.5 * g2 + g1 - 0.5 * x;
    Ok(LimitFunctionalReport {
        x,
        lhs_sequence: lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Interval;

    fn full() -> Interval {
        Interval::full_line()
    }

    #[test]
    fn expansion_residual_vanishes_for_solutions() {
        let id = SelfMap::identity(Interval::closed(0.0, 1.0));
        for n in 0..8 {
            let r = expansion_residual(&id, n, 0.37).unwrap();
            let scale = iterate_coeffs(n).scale();
            assert!(r.abs() <= 1e-15 * scale, "n = {n}: {r}");
        }
        // translations satisfy the expansion exactly: both sides are (n+3)c
        let t = SelfMap::affine(1.0, 2.5, full());
        for n in 0..8 {
            let r = expansion_residual(&t, n, 0.0).unwrap();
            let scale = iterate_coeffs(n).scale();
            assert!(r.abs() <= 1e-12 * scale, "n = {n}: {r}");
        }
        // g(x) = −2x: g⁴(1) = 16 and a₁g²+b₁g+c₁x = 3·4 + (−2)(−2) + 0 = 16
        let g = SelfMap::affine(-2.0, 0.0, full());
        assert_eq!(expansion_residual(&g, 1, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn linear_form_is_specific_to_increasing_solutions() {
        let t = SelfMap::affine(1.0, 2.0, Interval::new(0.0, f64::INFINITY, true, false).unwrap());
        assert_eq!(linear_iterate_form_residual(&t, 0, 1.0).unwrap(), 0.0);
        let id = SelfMap::identity(full());
        assert_eq!(linear_iterate_form_residual(&id, 5, -3.0).unwrap(), 0.0);
        // decreasing solution: the simplified form fails from n = 1 on
        let g = SelfMap::affine(-2.0, 0.0, full());
        assert_eq!(linear_iterate_form_residual(&g, 0, 1.0).unwrap(), 0.0);
        assert_eq!(linear_iterate_form_residual(&g, 1, 1.0).unwrap(), 27.0);
    }

    #[test]
    fn limit_functional_examples() {
        let id = SelfMap::identity(full());
        let r = limit_functional(&id, 1.0, 25).unwrap();
        assert_eq!(r.rhs, 0.0);
        assert!(r.final_gap() < 1e-6);

        let g = SelfMap::affine(-2.0, 0.0, full());
        let r = limit_functional(&g, 1.0, 30).unwrap();
        assert!((r.rhs + 4.5).abs() < 1e-12);
        assert!(r.final_gap() < 1e-7, "gap {}", r.final_gap());

        let t = SelfMap::affine(1.0, 1.0, full());
        let r = limit_functional(&t, 0.0, 30).unwrap();
        assert_eq!(r.rhs, 0.0);
        assert!(r.final_gap() < 1e-6);
    }
}

//! Candidate self-maps and their iteration.

use std::fmt;

use serde::Serialize;

use crate::domain::grid::sample_grid;
use crate::domain::Interval;
use crate::error::PlieError;
use crate::expr::ExprAst;

/// A candidate solution: a map from an interval into itself (or a candidate
/// for one — whether it actually self-maps is a diagnostic, not an
/// invariant).
#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    /// slope·x + intercept
    Affine { slope: f64, intercept: f64 },
    /// coeff·x^exponent with coeff > 0, defined on positive x
    PowerLaw { coeff: f64, exponent: f64 },
    /// piecewise-linear interpolation through strictly increasing knots
    GridMap { knots: Vec<f64>, values: Vec<f64> },
    /// parsed expression in x
    Expr { ast: ExprAst },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelfMap {
    kind: MapKind,
    domain: Interval,
}

/// Outcome of sampling a map's image against its domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfMapReport {
    pub is_self_map: bool,
    /// First sample point whose image leaves the domain closure.
    pub witness: Option<f64>,
}

/// Grid-based monotonicity verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Monotonicity {
    StrictlyIncreasing,
    StrictlyDecreasing,
    /// Three sample points (x₁ < x₂ < x₃) witnessing the violation.
    NonMonotone { witness: (f64, f64, f64) },
}

/// An initial orbit segment (x, g(x), g²(x), …).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Orbit {
    pub start: f64,
    pub values: Vec<f64>,
}

impl Orbit {
    pub fn differences(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.windows(2).map(|w| w[1] - w[0])
    }
}

impl SelfMap {
    pub fn affine(slope: f64, intercept: f64, domain: Interval) -> Self {
        SelfMap {
            kind: MapKind::Affine { slope, intercept },
            domain,
        }
    }

    pub fn identity(domain: Interval) -> Self {
        Self::affine(1.0, 0.0, domain)
    }

    pub fn power_law(coeff: f64, exponent: f64, domain: Interval) -> Result<Self, PlieError> {
        if !(coeff > 0.0) {
            return Err(PlieError::Domain(format!(
                "power-law coefficient must be positive, got {coeff}"
            )));
        }
        if domain.lo() < 0.0 {
            return Err(PlieError::Domain(format!(
                "power-law domain {domain} reaches negative reals"
            )));
        }
        Ok(SelfMap {
            kind: MapKind::PowerLaw { coeff, exponent },
            domain,
        })
    }

    /// Knots must be strictly increasing and lie in the domain; values are
    /// required to lie in the domain closure.
    pub fn grid_map(knots: Vec<f64>, values: Vec<f64>, domain: Interval) -> Result<Self, PlieError> {
        if knots.len() != values.len() {
            return Err(PlieError::Domain(format!(
                "{} knots but {} values",
                knots.len(),
                values.len()
            )));
        }
        if knots.len() < 2 {
            return Err(PlieError::Domain("a grid map needs at least 2 knots".into()));
        }
        if !knots.windows(2).all(|w| w[0] < w[1]) {
            return Err(PlieError::Domain("grid-map knots must be strictly increasing".into()));
        }
        for &k in &knots {
            if !domain.closure_contains(k) {
                return Err(PlieError::Domain(format!(
                    "knot {k} outside domain {domain}"
                )));
            }
        }
        for &v in &values {
            if v.is_nan() || (domain.is_bounded() && !domain.closure_contains(v)) {
                return Err(PlieError::Domain(format!(
                    "value {v} outside the closure of {domain}"
                )));
            }
            if !v.is_finite() {
                return Err(PlieError::Domain(format!("non-finite grid value {v}")));
            }
        }
        Ok(SelfMap {
            kind: MapKind::GridMap { knots, values },
            domain,
        })
    }

    pub fn from_expr(ast: ExprAst, domain: Interval) -> Self {
        SelfMap {
            kind: MapKind::Expr { ast },
            domain,
        }
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    /// Evaluate at `x ∈ cl(domain)`. Grid maps clamp to the boundary value
    /// outside their knot range; use [`SelfMap::evaluate_flagged`] to observe
    /// the clamp.
    pub fn evaluate(&self, x: f64) -> Result<f64, PlieError> {
        self.evaluate_flagged(x).map(|(v, _)| v)
    }

    /// Evaluate and report whether a grid-map clamp occurred.
    pub fn evaluate_flagged(&self, x: f64) -> Result<(f64, bool), PlieError> {
        if !self.domain.closure_contains(x) {
            return Err(PlieError::Domain(format!(
                "x = {x} outside the closure of {}",
                self.domain
            )));
        }
        match &self.kind {
            MapKind::Affine { slope, intercept } => Ok((slope * x + intercept, false)),
            MapKind::PowerLaw { coeff, exponent } => {
                if x < 0.0 || (x == 0.0 && *exponent < 0.0) {
                    return Err(PlieError::Eval {
                        x,
                        reason: "power law undefined at non-positive x".into(),
                    });
                }
                let v = coeff * x.powf(*exponent);
                if v.is_finite() {
                    Ok((v, false))
                } else {
                    Err(PlieError::Eval {
                        x,
                        reason: "power law overflow".into(),
                    })
                }
            }
            MapKind::GridMap { knots, values } => {
                let first = knots[0];
                let last = *knots.last().unwrap();
                if x <= first {
                    return Ok((values[0], x < first));
                }
                if x >= last {
                    return Ok((*values.last().unwrap(), x > last));
                }
                let idx = match knots.binary_search_by(|k| k.partial_cmp(&x).unwrap()) {
                    Ok(i) => return Ok((values[i], false)),
                    Err(i) => i - 1,
                };
                let t = (x - knots[idx]) / (knots[idx + 1] - knots[idx]);
                Ok((values[idx] + t * (values[idx + 1] - values[idx]), false))
            }
            MapKind::Expr { ast } => ast.eval(x).map(|v| (v, false)),
        }
    }

    /// n-fold composition; n = 0 returns x exactly. Fails with an escape
    /// error naming the first iterate that leaves the domain closure.
    pub fn iterate(&self, n: usize, x: f64) -> Result<f64, PlieError> {
        let mut v = x;
        for k in 1..=n {
            let next = self.evaluate(v).map_err(|e| match e {
                PlieError::Domain(_) => PlieError::Escape {
                    start: x,
                    step: k - 1,
                    value: v,
                },
                other => other,
            })?;
            if !self.domain.closure_contains(next) {
                return Err(PlieError::Escape {
                    start: x,
                    step: k,
                    value: next,
                });
            }
            v = next;
        }
        Ok(v)
    }

    /// The orbit (x, g(x), …, gⁿ(x)).
    pub fn orbit(&self, x: f64, n: usize) -> Result<Orbit, PlieError> {
        let mut values = Vec::with_capacity(n + 1);
        values.push(x);
        let mut v = x;
        for k in 1..=n {
            let next = self.evaluate(v).map_err(|e| match e {
                PlieError::Domain(_) => PlieError::Escape {
                    start: x,
                    step: k - 1,
                    value: v,
                },
                other => other,
            })?;
            if !self.domain.closure_contains(next) {
                return Err(PlieError::Escape {
                    start: x,
                    step: k,
                    value: next,
                });
            }
            values.push(next);
            v = next;
        }
        Ok(Orbit { start: x, values })
    }

    /// Sample the domain on a grid and report the first sample mapped
    /// outside the domain closure. Evaluation failures count as failures of
    /// the self-map property at that sample.
    pub fn check_self_map(&self, grid_size: usize) -> Result<SelfMapReport, PlieError> {
        if grid_size < 2 {
            return Err(PlieError::Config("self-map check needs a grid of at least 2".into()));
        }
        let grid = sample_grid(&self.domain, grid_size, None)?;
        for &x in &grid {
            match self.evaluate(x) {
                Ok(v) if self.domain.closure_contains(v) => {}
                _ => {
                    return Ok(SelfMapReport {
                        is_self_map: false,
                        witness: Some(x),
                    })
                }
            }
        }
        Ok(SelfMapReport {
            is_self_map: true,
            witness: None,
        })
    }

    /// Grid-based monotonicity diagnosis. A non-strict step (equal values)
    /// counts as a violation and is reported with a witness triple.
    pub fn monotonicity_diagnosis(&self, grid_size: usize) -> Result<Monotonicity, PlieError> {
        if grid_size < 3 {
            return Err(PlieError::Config("monotonicity check needs a grid of at least 3".into()));
        }
        let grid = sample_grid(&self.domain, grid_size, None)?;
        let mut vals = Vec::with_capacity(grid.len());
        for &x in &grid {
            vals.push(self.evaluate(x)?);
        }
        let mut direction = 0i8;
        for i in 0..vals.len() - 1 {
            let d = vals[i + 1] - vals[i];
            let s = if d > 0.0 {
                1
            } else if d < 0.0 {
                -1
            } else {
                0
            };
            if s == 0 || (direction != 0 && s != direction) {
                let j = i.max(1);
                return Ok(Monotonicity::NonMonotone {
                    witness: (grid[j - 1], grid[j], grid[j + 1]),
                });
            }
            direction = s;
        }
        Ok(if direction >= 0 {
            Monotonicity::StrictlyIncreasing
        } else {
            Monotonicity::StrictlyDecreasing
        })
    }

    /// Canonical text form used in reports.
    pub fn describe(&self) -> String {
        match &self.kind {
            MapKind::Affine { slope, intercept } => {
                let ast = affine_ast(*slope, *intercept);
                ast.to_string()
            }
            MapKind::PowerLaw { coeff, exponent } => power_ast(*coeff, *exponent).to_string(),
            MapKind::GridMap { knots, .. } => format!("grid map ({} knots)", knots.len()),
            MapKind::Expr { ast } => ast.to_string(),
        }
    }
}

impl fmt::Display for SelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.describe(), self.domain)
    }
}

/// Expression tree for slope·x + intercept in canonical form.
pub(crate) fn affine_ast(slope: f64, intercept: f64) -> ExprAst {
    use crate::expr::BinaryOp::*;
    let sx = if slope == 1.0 {
        ExprAst::Var
    } else if slope == -1.0 {
        ExprAst::Neg(Box::new(ExprAst::Var))
    } else if slope < 0.0 {
        ExprAst::binary(
            Mul,
            ExprAst::Neg(Box::new(ExprAst::Const(-slope))),
            ExprAst::Var,
        )
    } else {
        ExprAst::binary(Mul, ExprAst::Const(slope), ExprAst::Var)
    };
    if intercept == 0.0 {
        if slope == 0.0 {
            return ExprAst::Const(0.0);
        }
        sx
    } else if slope == 0.0 {
        ExprAst::Const(intercept)
    } else if intercept < 0.0 {
        ExprAst::binary(Sub, sx, ExprAst::Const(-intercept))
    } else {
        ExprAst::binary(Add, sx, ExprAst::Const(intercept))
    }
}

/// Expression tree for coeff·x^exponent in canonical form.
pub(crate) fn power_ast(coeff: f64, exponent: f64) -> ExprAst {
    use crate::expr::BinaryOp::*;
    let xe = if exponent == 1.0 {
        ExprAst::Var
    } else if exponent < 0.0 {
        return if coeff == 1.0 && exponent == -1.0 {
            ExprAst::binary(Div, ExprAst::Const(1.0), ExprAst::Var)
        } else {
            ExprAst::binary(
                Div,
                ExprAst::Const(coeff),
                ExprAst::binary(Pow, ExprAst::Var, ExprAst::Const(-exponent)),
            )
        };
    } else {
        ExprAst::binary(Pow, ExprAst::Var, ExprAst::Const(exponent))
    };
    if coeff == 1.0 {
        xe
    } else {
        ExprAst::binary(Mul, ExprAst::Const(coeff), xe)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval {
        Interval::closed(0.0, 1.0)
    }

    #[test]
    fn evaluate_affine_and_power() {
        let id = SelfMap::identity(unit());
        assert_eq!(id.evaluate(0.7).unwrap(), 0.7);
        let g = SelfMap::affine(-2.0, 1.0, Interval::full_line());
        assert_eq!(g.evaluate(2.0).unwrap(), -3.0);
        let f = SelfMap::power_law(2.0, -2.0, Interval::new(0.0, f64::INFINITY, false, false).unwrap())
            .unwrap();
        assert_eq!(f.evaluate(2.0).unwrap(), 0.5);
        assert!(f.evaluate(0.0).is_err());
    }

    #[test]
    fn evaluate_outside_domain_fails() {
        let id = SelfMap::identity(unit());
        assert!(matches!(id.evaluate(1.5), Err(PlieError::Domain(_))));
    }

    #[test]
    fn iterate_identity_and_translations() {
        let id = SelfMap::identity(unit());
        assert_eq!(id.iterate(100, 0.3).unwrap(), 0.3);
        assert_eq!(id.iterate(0, 0.3).unwrap(), 0.3);

        let g = SelfMap::affine(1.0, 5.0, Interval::new(0.0, f64::INFINITY, true, false).unwrap());
        assert_eq!(g.iterate(3, 0.0).unwrap(), 15.0);
    }

    #[test]
    fn iterate_matches_symbolic_composition() {
        // g(x) = −2x+1: g²(x) = 4x−1, g³(x) = −8x+3
        let g = SelfMap::affine(-2.0, 1.0, Interval::full_line());
        for x in [-3.0, -0.5, 0.0, 0.25, 1.0, 7.5] {
            assert!((g.iterate(2, x).unwrap() - (4.0 * x - 1.0)).abs() < 1e-12);
            assert!((g.iterate(3, x).unwrap() - (-8.0 * x + 3.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn iterate_reports_escape_step() {
        let g = SelfMap::affine(1.0, 0.4, unit());
        let err = g.iterate(3, 0.5).unwrap_err();
        match err {
            PlieError::Escape { start, step, value } => {
                assert_eq!(start, 0.5);
                assert_eq!(step, 2);
                assert!((value - 1.3).abs() < 1e-12);
            }
            other => panic!("expected escape, got {other:?}"),
        }
    }

    #[test]
    fn orbit_collects_intermediates() {
        let id = SelfMap::identity(unit());
        assert_eq!(id.orbit(0.5, 4).unwrap().values, vec![0.5; 5]);

        // G(x) = (1−x)/2 from 1: (1, 0, 0.5, 0.25)
        let g = SelfMap::affine(-0.5, 0.5, unit());
        assert_eq!(g.orbit(1.0, 3).unwrap().values, vec![1.0, 0.0, 0.5, 0.25]);

        let t = SelfMap::affine(1.0, 1.0, Interval::new(0.0, f64::INFINITY, true, false).unwrap());
        assert_eq!(t.orbit(0.0, 3).unwrap().values, vec![0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn self_map_check_examples() {
        let g = SelfMap::affine(1.0, 0.1, unit());
        let r = g.check_self_map(11).unwrap();
        assert!(!r.is_self_map);
        assert!(r.witness.unwrap() > 0.89);

        let half = Interval::new(0.0, f64::INFINITY, true, false).unwrap();
        let up = SelfMap::affine(1.0, 2.0, half);
        assert!(up.check_self_map(101).unwrap().is_self_map);

        let neg = SelfMap::affine(-2.0, 0.0, half);
        let r = neg.check_self_map(101).unwrap();
        assert!(!r.is_self_map);
        assert!(r.witness.unwrap() > 0.0);
    }

    #[test]
    fn monotonicity_examples() {
        let inc = SelfMap::affine(1.0, 3.0, Interval::full_line());
        assert_eq!(
            inc.monotonicity_diagnosis(33).unwrap(),
            Monotonicity::StrictlyIncreasing
        );
        let dec = SelfMap::affine(-2.0, 0.0, Interval::full_line());
        assert_eq!(
            dec.monotonicity_diagnosis(33).unwrap(),
            Monotonicity::StrictlyDecreasing
        );
        let sq = SelfMap::from_expr(crate::expr::parse("x*x").unwrap(), Interval::open(-1.0, 1.0));
        match sq.monotonicity_diagnosis(11).unwrap() {
            Monotonicity::NonMonotone { witness: (a, b, c) } => {
                assert!(a < b && b < c);
                // the violation brackets the vertex at 0
                assert!(a < 0.0 && c > 0.0);
            }
            other => panic!("expected non-monotone, got {other:?}"),
        }
    }

    #[test]
    fn grid_map_interpolates_and_clamps() {
        let dom = Interval::closed(0.0, 2.0);
        let g = SelfMap::grid_map(vec![0.0, 1.0], vec![0.0, 1.0], dom).unwrap();
        assert_eq!(g.evaluate(0.5).unwrap(), 0.5);
        let (v, clamped) = g.evaluate_flagged(1.5).unwrap();
        assert_eq!(v, 1.0);
        assert!(clamped);
    }

    #[test]
    fn grid_map_validation() {
        let dom = unit();
        assert!(SelfMap::grid_map(vec![0.0, 0.0], vec![0.0, 1.0], dom).is_err());
        assert!(SelfMap::grid_map(vec![0.0, 2.0], vec![0.0, 1.0], dom).is_err());
        assert!(SelfMap::grid_map(vec![0.0, 1.0], vec![0.0, 1.5], dom).is_err());
    }

    #[test]
    fn describe_is_canonical() {
        assert_eq!(SelfMap::affine(-2.0, 1.0, unit()).describe(), "-2*x + 1");
        assert_eq!(SelfMap::identity(unit()).describe(), "x");
        assert_eq!(SelfMap::affine(1.0, -2.0, unit()).describe(), "x - 2");
        let f = SelfMap::power_law(2.0, -2.0, Interval::open(0.0, 1.0)).unwrap();
        assert_eq!(f.describe(), "2/x^2");
    }
}

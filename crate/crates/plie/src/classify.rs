//! Closed-form solution families and candidate classification.
//!
//! On a non-degenerate interval I the continuous solutions of
//! g³(x) = 3g(x) − 2x are exactly:
//!
//! * I bounded (or a point): the identity;
//! * I a half-line: the translations g(x) = x + c that keep I inside
//!   itself (c ≥ 0 towards +∞, c ≤ 0 towards −∞);
//! * I = ℝ: all translations, plus the decreasing maps g(x) = −2x + c.
//!
//! The parameter constraint of each family coincides with self-map
//! feasibility of its closed form, which is how [`translation_range`]
//! derives it.

use serde::Serialize;

use crate::domain::{sample_grid, windowed_grid, Interval, IntervalKind, Monotonicity, SelfMap};
use crate::error::PlieError;

/// One of the closed-form solution families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyKind {
    Identity,
    Translation { c: f64 },
    AffineNeg2 { c: f64 },
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Identity => "identity",
            FamilyKind::Translation { .. } => "translation",
            FamilyKind::AffineNeg2 { .. } => "affine_neg2",
        }
    }

    pub fn parameter(&self) -> Option<f64> {
        match self {
            FamilyKind::Identity => None,
            FamilyKind::Translation { c } | FamilyKind::AffineNeg2 { c } => Some(*c),
        }
    }
}

/// A family member together with the domain it solves the equation on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionFamily {
    pub kind: FamilyKind,
    pub domain: Interval,
}

impl SolutionFamily {
    pub fn to_map(&self) -> SelfMap {
        match self.kind {
            FamilyKind::Identity => SelfMap::identity(self.domain),
            FamilyKind::Translation { c } => SelfMap::affine(1.0, c, self.domain),
            FamilyKind::AffineNeg2 { c } => SelfMap::affine(-2.0, c, self.domain),
        }
    }

    /// Exact membership test against the family set of the domain.
    pub fn is_valid(&self) -> bool {
        match self.kind {
            FamilyKind::Identity => true,
            FamilyKind::Translation { c } => translation_range(&self.domain).contains(c),
            FamilyKind::AffineNeg2 { .. } => self.domain.kind() == IntervalKind::FullLine,
        }
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        match self.kind {
            FamilyKind::Identity => x,
            FamilyKind::Translation { c } => x + c,
            FamilyKind::AffineNeg2 { c } => -2.0 * x + c,
        }
    }
}

/// The admissible translation parameters on `domain`: precisely the c with
/// x + c ∈ domain for every x, i.e. the self-map condition of the closed
/// form.
pub fn translation_range(domain: &Interval) -> Interval {
    match domain.kind() {
        IntervalKind::Degenerate | IntervalKind::Bounded => Interval::point(0.0),
        IntervalKind::HalfLine => {
            if domain.hi() == f64::INFINITY {
                Interval::new(0.0, f64::INFINITY, true, false).unwrap()
            } else {
                Interval::new(f64::NEG_INFINITY, 0.0, false, true).unwrap()
            }
        }
        IntervalKind::FullLine => Interval::full_line(),
    }
}

/// Symbolic description of one family with its parameter constraint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilySpec {
    pub name: &'static str,
    /// Admissible parameter values; `None` for the parameterless identity.
    pub parameter_range: Option<Interval>,
}

impl FamilySpec {
    /// Exact membership test for a concrete family member. The identity is
    /// admitted by a translation spec whose range contains 0.
    pub fn admits(&self, kind: &FamilyKind) -> bool {
        match (self.name, kind) {
            ("identity", FamilyKind::Identity) => true,
            ("identity", FamilyKind::Translation { c }) => *c == 0.0,
            ("translation", FamilyKind::Translation { c }) => {
                self.parameter_range.map_or(false, |r| r.contains(*c))
            }
            ("translation", FamilyKind::Identity) => {
                self.parameter_range.map_or(false, |r| r.contains(0.0))
            }
            ("affine_neg2", FamilyKind::AffineNeg2 { c }) => {
                self.parameter_range.map_or(false, |r| r.contains(*c))
            }
            _ => false,
        }
    }
}

/// The complete family set of a domain, with parameter constraints.
pub fn enumerate_families(domain: &Interval) -> Vec<FamilySpec> {
    match domain.kind() {
        IntervalKind::Degenerate | IntervalKind::Bounded => vec![FamilySpec {
            name: "identity",
            parameter_range: None,
        }],
        IntervalKind::HalfLine => vec![FamilySpec {
            name: "translation",
            parameter_range: Some(translation_range(domain)),
        }],
        IntervalKind::FullLine => vec![
            FamilySpec {
                name: "translation",
                parameter_range: Some(Interval::full_line()),
            },
            FamilySpec {
                name: "affine_neg2",
                parameter_range: Some(Interval::full_line()),
            },
        ],
    }
}

/// Verification / classification result over one grid.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub candidate: String,
    pub domain: Interval,
    pub window: Option<(f64, f64)>,
    pub grid_size: usize,
    pub self_map_ok: bool,
    pub monotonicity: Monotonicity,
    /// sup over the grid of |g³(x) − 3g(x) + 2x| (clamped samples excluded).
    pub residual_sup: f64,
    pub nearest_family: Option<SolutionFamily>,
    /// sup over the same grid of |g(x) − nearest(x)|.
    pub distance_sup: Option<f64>,
    /// Grid samples whose iterate path hit a grid-map boundary clamp.
    pub clamped_samples: usize,
    pub flags: Vec<String>,
}

/// The verification grid: uniform over the bounded domain, or over an
/// explicit window for half-lines and ℝ (windows change results, so no
/// default is supplied here).
fn verification_grid(
    domain: &Interval,
    grid_size: usize,
    window: Option<(f64, f64)>,
) -> Result<Vec<f64>, PlieError> {
    match window {
        Some(w) => windowed_grid(domain, grid_size, w),
        None => {
            if domain.is_bounded() {
                sample_grid(domain, grid_size, None)
            } else {
                Err(PlieError::Config(format!(
                    "domain {domain} is unbounded: an explicit window is required"
                )))
            }
        }
    }
}

struct GridAnalysis {
    xs: Vec<f64>,
    g1: Vec<f64>,
    residuals: Vec<f64>,
    clamped: Vec<bool>,
    clamped_samples: usize,
}

fn analyze_grid(map: &SelfMap, xs: Vec<f64>) -> Result<GridAnalysis, PlieError> {
    let dom = map.domain();
    let mut g1s = Vec::with_capacity(xs.len());
    let mut residuals = Vec::with_capacity(xs.len());
    let mut clamped = Vec::with_capacity(xs.len());
    let mut clamped_samples = 0usize;
    for &x in &xs {
        let (v1, c1) = map.evaluate_flagged(x)?;
        if !dom.closure_contains(v1) {
            return Err(PlieError::Escape {
                start: x,
                step: 1,
                value: v1,
            });
        }
        let (v2, c2) = map.evaluate_flagged(v1)?;
        if !dom.closure_contains(v2) {
            return Err(PlieError::Escape {
                start: x,
                step: 2,
                value: v2,
            });
        }
        let (v3, c3) = map.evaluate_flagged(v2)?;
        let clamp = c1 || c2 || c3;
        g1s.push(v1);
        residuals.push((v3 - 3.0 * v1 + 2.0 * x).abs());
        clamped.push(clamp);
        clamped_samples += usize::from(clamp);
    }
    Ok(GridAnalysis {
        xs,
        g1: g1s,
        residuals,
        clamped,
        clamped_samples,
    })
}

fn residual_sup(analysis: &GridAnalysis) -> f64 {
    let mut sup = 0.0f64;
    let mut any = false;
    for (r, c) in analysis.residuals.iter().zip(&analysis.clamped) {
        if !c {
            sup = sup.max(*r);
            any = true;
        }
    }
    if any {
        sup
    } else {
        // every sample clamped: fall back to the clamped values
        analysis.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Verify a candidate against the equation: sup over the grid of
/// |g³(x) − 3g(x) + 2x|. Fails with an escape error (witnessing the sample)
/// when the candidate is not a self-map; a non-monotone candidate is
/// flagged, not rejected.
pub fn verify_solution(
    map: &SelfMap,
    grid_size: usize,
    window: Option<(f64, f64)>,
) -> Result<ClassificationReport, PlieError> {
    let (report, _) = verify_inner(map, grid_size, window)?;
    Ok(report)
}

fn verify_inner(
    map: &SelfMap,
    grid_size: usize,
    window: Option<(f64, f64)>,
) -> Result<(ClassificationReport, GridAnalysis), PlieError> {
    if grid_size < 3 {
        return Err(PlieError::Config("verification needs a grid of at least 3".into()));
    }
    let self_map = map.check_self_map(grid_size.min(257))?;
    if !self_map.is_self_map {
        let witness = self_map.witness.unwrap_or(f64::NAN);
        let value = map.evaluate(witness).unwrap_or(f64::NAN);
        return Err(PlieError::Escape {
            start: witness,
            step: 1,
            value,
        });
    }
    let monotonicity = map.monotonicity_diagnosis(grid_size.min(257))?;
    let mut flags = Vec::new();
    if matches!(monotonicity, Monotonicity::NonMonotone { .. }) {
        flags.push("not_strictly_monotone".to_string());
    }
    let xs = verification_grid(map.domain(), grid_size, window)?;
    let analysis = analyze_grid(map, xs)?;
    if analysis.clamped_samples > 0 {
        flags.push("clamped_samples_excluded_from_sup".to_string());
    }
    let report = ClassificationReport {
        candidate: map.describe(),
        domain: *map.domain(),
        window,
        grid_size,
        self_map_ok: true,
        monotonicity,
        residual_sup: residual_sup(&analysis),
        nearest_family: None,
        distance_sup: None,
        clamped_samples: analysis.clamped_samples,
        flags,
    };
    Ok((report, analysis))
}

/// 2x − g(x) − g²(x): the Babbage-type residual every decreasing solution
/// on ℝ satisfies identically.
pub fn babbage_residual(map: &SelfMap, x: f64) -> Result<f64, PlieError> {
    let orbit = map.orbit(x, 2)?;
    Ok(2.0 * x - orbit.values[1] - orbit.values[2])
}

/// G³(x) − (3/2)G²(x) + (1/2)x for the inverse map G of a decreasing
/// solution.
pub fn inverse_equation_residual(inverse_map: &SelfMap, x: f64) -> Result<f64, PlieError> {
    let orbit = inverse_map.orbit(x, 3)?;
    Ok(orbit.values[3] - 1.5 * orbit.values[2] + 0.5 * x)
}

/// Verify, then fit the nearest family member: the translation parameter is
/// the grid mean of g(x) − x and the affine parameter the grid mean of
/// g(x) + 2x (both least-squares optimal), each clamped into the family's
/// admissible range; the nearest family minimises the sup-distance over the
/// same grid.
pub fn classify_candidate(
    map: &SelfMap,
    grid_size: usize,
    window: Option<(f64, f64)>,
) -> Result<ClassificationReport, PlieError> {
    let (mut report, analysis) = verify_inner(map, grid_size, window)?;
    let domain = *map.domain();

    let unclamped: Vec<usize> = (0..analysis.xs.len())
        .filter(|&i| !analysis.clamped[i])
        .collect();
    let idx: Vec<usize> = if unclamped.is_empty() {
        (0..analysis.xs.len()).collect()
    } else {
        unclamped
    };

    let mean = |f: &dyn Fn(usize) -> f64| -> f64 {
        idx.iter().map(|&i| f(i)).sum::<f64>() / idx.len() as f64
    };

    let mut candidates: Vec<SolutionFamily> = vec![SolutionFamily {
        kind: FamilyKind::Identity,
        domain,
    }];
    if domain.kind() != IntervalKind::Degenerate && domain.kind() != IntervalKind::Bounded {
        let range = translation_range(&domain);
        let c = mean(&|i| analysis.g1[i] - analysis.xs[i]).clamp(range.lo(), range.hi());
        candidates.push(SolutionFamily {
            kind: FamilyKind::Translation { c },
            domain,
        });
    }
    if domain.kind() == IntervalKind::FullLine {
        let c = mean(&|i| analysis.g1[i] + 2.0 * analysis.xs[i]);
        candidates.push(SolutionFamily {
            kind: FamilyKind::AffineNeg2 { c },
            domain,
        });
    }

    let mut best: Option<(f64, SolutionFamily)> = None;
    for fam in candidates {
        let dist = idx
            .iter()
            .map(|&i| (analysis.g1[i] - fam.evaluate(analysis.xs[i])).abs())
            .fold(0.0, f64::max);
        match &best {
            Some((d, _)) if *d <= dist => {}
            _ => best = Some((dist, fam)),
        }
    }
    if let Some((dist, fam)) = best {
        report.distance_sup = Some(dist);
        report.nearest_family = Some(fam);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_up() -> Interval {
        Interval::new(0.0, f64::INFINITY, true, false).unwrap()
    }

    fn half_down() -> Interval {
        Interval::new(f64::NEG_INFINITY, 0.0, false, true).unwrap()
    }

    #[test]
    fn family_sets_by_domain_kind() {
        let fams = enumerate_families(&Interval::closed(0.0, 1.0));
        assert_eq!(fams.len(), 1);
        assert_eq!(fams[0].name, "identity");

        let fams = enumerate_families(&half_up());
        assert_eq!(fams.len(), 1);
        assert_eq!(fams[0].name, "translation");
        let r = fams[0].parameter_range.unwrap();
        assert!(r.contains(0.0) && r.contains(5.0) && !r.contains(-0.1));

        let fams = enumerate_families(&half_down());
        let r = fams[0].parameter_range.unwrap();
        assert!(r.contains(0.0) && r.contains(-5.0) && !r.contains(0.1));

        let fams = enumerate_families(&Interval::full_line());
        assert_eq!(fams.len(), 2);
        assert!(fams.iter().any(|f| f.name == "translation"));
        assert!(fams.iter().any(|f| f.name == "affine_neg2"));

        let fams = enumerate_families(&Interval::point(2.0));
        assert_eq!(fams[0].name, "identity");
    }

    #[test]
    fn family_validity() {
        let ok = SolutionFamily {
            kind: FamilyKind::Translation { c: 2.0 },
            domain: half_up(),
        };
        assert!(ok.is_valid());
        let bad = SolutionFamily {
            kind: FamilyKind::Translation { c: -0.5 },
            domain: half_up(),
        };
        assert!(!bad.is_valid());
        let neg2 = SolutionFamily {
            kind: FamilyKind::AffineNeg2 { c: 3.0 },
            domain: Interval::full_line(),
        };
        assert!(neg2.is_valid());
        let neg2_half = SolutionFamily {
            kind: FamilyKind::AffineNeg2 { c: 3.0 },
            domain: half_up(),
        };
        assert!(!neg2_half.is_valid());
        // bounded: translations only at c = 0
        let t0 = SolutionFamily {
            kind: FamilyKind::Translation { c: 0.0 },
            domain: Interval::closed(0.0, 1.0),
        };
        assert!(t0.is_valid());
    }

    #[test]
    fn verify_exact_members() {
        let id = SelfMap::identity(Interval::open(0.0, 1.0));
        let r = verify_solution(&id, 1001, None).unwrap();
        assert!(r.residual_sup <= 1e-15);
        assert!(r.self_map_ok);

        let g = SelfMap::affine(-2.0, 1.0, Interval::full_line());
        let r = verify_solution(&g, 1001, Some((-5.0, 5.0))).unwrap();
        assert!(r.residual_sup <= 1e-12);
        assert!(matches!(r.monotonicity, Monotonicity::StrictlyDecreasing));
    }

    #[test]
    fn verify_rejects_non_self_map() {
        let g = SelfMap::affine(1.0, 0.1, Interval::closed(0.0, 1.0));
        match verify_solution(&g, 101, None) {
            Err(PlieError::Escape { start, .. }) => assert!(start > 0.89),
            other => panic!("expected escape, got {other:?}"),
        }
    }

    #[test]
    fn verify_requires_window_on_unbounded_domains() {
        let g = SelfMap::identity(Interval::full_line());
        assert!(matches!(
            verify_solution(&g, 101, None),
            Err(PlieError::Config(_))
        ));
    }

    #[test]
    fn babbage_examples() {
        let full = Interval::full_line();
        for c in [-3.0, 0.0, 1.0, 7.0] {
            let g = SelfMap::affine(-2.0, c, full);
            for x in [-2.0, 0.0, 0.7, 5.0] {
                assert!(babbage_residual(&g, x).unwrap().abs() < 1e-12);
            }
        }
        let id = SelfMap::identity(full);
        assert_eq!(babbage_residual(&id, 1.0).unwrap(), 0.0);
        let t = SelfMap::affine(1.0, 1.0, full);
        assert_eq!(babbage_residual(&t, 0.0).unwrap(), -3.0);
    }

    #[test]
    fn inverse_equation_examples() {
        let full = Interval::full_line();
        // G(x) = (c−x)/2 with c = 1
        let g = SelfMap::affine(-0.5, 0.5, full);
        assert!(inverse_equation_residual(&g, 1.0).unwrap().abs() < 1e-15);
        let id = SelfMap::identity(full);
        assert_eq!(inverse_equation_residual(&id, 1.0).unwrap(), 0.0);
        // the involution −x is not a solution of the inverse equation
        let inv = SelfMap::affine(-1.0, 0.0, full);
        assert_eq!(inverse_equation_residual(&inv, 1.0).unwrap(), -2.0);
    }

    #[test]
    fn classify_exact_members() {
        let t = SelfMap::affine(1.0, 2.0, half_up());
        let r = classify_candidate(&t, 501, Some((0.0, 50.0))).unwrap();
        match r.nearest_family.unwrap().kind {
            FamilyKind::Translation { c } => assert!((c - 2.0).abs() < 1e-12),
            other => panic!("expected translation, got {other:?}"),
        }
        assert!(r.distance_sup.unwrap() < 1e-12);

        let g = SelfMap::affine(-2.0, 0.0, Interval::full_line());
        let r = classify_candidate(&g, 501, Some((-5.0, 5.0))).unwrap();
        match r.nearest_family.unwrap().kind {
            FamilyKind::AffineNeg2 { c } => assert!(c.abs() < 1e-12),
            other => panic!("expected affine_neg2, got {other:?}"),
        }
        assert!(r.distance_sup.unwrap() < 1e-12);
    }

    #[test]
    fn classify_noisy_identity() {
        // identity plus ±1e−4 noise at the knots of a grid map on [0,1]
        let dom = Interval::closed(0.0, 1.0);
        let knots: Vec<f64> = (0..=40).map(|k| k as f64 / 40.0).collect();
        let values: Vec<f64> = knots
            .iter()
            .enumerate()
            .map(|(k, &x)| {
                let noise = if k % 2 == 0 { 1e-4 } else { -1e-4 };
                (x + noise).clamp(0.0, 1.0)
            })
            .collect();
        let g = SelfMap::grid_map(knots, values, dom).unwrap();
        let r = classify_candidate(&g, 501, None).unwrap();
        assert!(matches!(
            r.nearest_family.unwrap().kind,
            FamilyKind::Identity
        ));
        assert!(r.distance_sup.unwrap() <= 2e-4);
    }

    #[test]
    fn half_line_fit_respects_constraint() {
        // a candidate drifting below the identity on [0,∞) must not fit a
        // negative translation parameter
        let knots: Vec<f64> = (0..=64).map(|k| k as f64 / 8.0).collect();
        let values: Vec<f64> = knots.iter().map(|&x| (x - 0.05).max(0.0)).collect();
        let g = SelfMap::grid_map(knots, values, half_up()).unwrap();
        let r = classify_candidate(&g, 257, Some((0.0, 8.0))).unwrap();
        match r.nearest_family.unwrap().kind {
            FamilyKind::Identity => {}
            FamilyKind::Translation { c } => assert!(c >= 0.0),
            other => panic!("unexpected family {other:?}"),
        }
    }
}

//! The multiplicative side: f³(x) = f(x)³/x² on subintervals of (0, +∞).
//!
//! The change of variables g = log ∘ f ∘ exp carries solutions of the
//! multiplicative equation on J to solutions of the additive equation
//! g³(x) = 3g(x) − 2x on log J, and back via f = exp ∘ g ∘ log. The Boros
//! families are therefore the conjugated images of the additive ones:
//!
//! * J bounded away from 0 and ∞: the identity;
//! * 0 ∈ cl J: f(x) = c·x with c ∈ (0, 1];
//! * J unbounded, 0 ∉ cl J: f(x) = c·x with c ∈ [1, ∞);
//! * J = (0, ∞): f(x) = c·x (c > 0) and f(x) = c/x² (c > 0).

use serde::Serialize;

use crate::classify::{enumerate_families, translation_range, FamilyKind, FamilySpec, SolutionFamily};
use crate::domain::{log_spaced_grid, Interval, IntervalKind, SelfMap};
use crate::error::PlieError;
use crate::expr::{ExprAst, Func};

/// One of the closed-form Boros families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum BorosFamilyKind {
    Identity,
    /// f(x) = c·x, c > 0
    Linear { c: f64 },
    /// f(x) = c/x², c > 0
    InverseSquare { c: f64 },
}

impl BorosFamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            BorosFamilyKind::Identity => "identity",
            BorosFamilyKind::Linear { .. } => "linear",
            BorosFamilyKind::InverseSquare { .. } => "inverse_square",
        }
    }

    pub fn parameter(&self) -> Option<f64> {
        match self {
            BorosFamilyKind::Identity => None,
            BorosFamilyKind::Linear { c } | BorosFamilyKind::InverseSquare { c } => Some(*c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BorosFamily {
    pub kind: BorosFamilyKind,
    pub domain: Interval,
}

impl BorosFamily {
    pub fn to_map(&self) -> Result<SelfMap, PlieError> {
        match self.kind {
            BorosFamilyKind::Identity => Ok(SelfMap::identity(self.domain)),
            BorosFamilyKind::Linear { c } => SelfMap::power_law(c, 1.0, self.domain),
            BorosFamilyKind::InverseSquare { c } => SelfMap::power_law(c, -2.0, self.domain),
        }
    }

    /// Additive image under g = log ∘ f ∘ exp.
    pub fn to_additive(&self) -> Result<SolutionFamily, PlieError> {
        let domain = self.domain.log_image()?;
        let kind = match self.kind {
            BorosFamilyKind::Identity => FamilyKind::Identity,
            BorosFamilyKind::Linear { c } => FamilyKind::Translation { c: c.ln() },
            BorosFamilyKind::InverseSquare { c } => FamilyKind::AffineNeg2 { c: c.ln() },
        };
        Ok(SolutionFamily { kind, domain })
    }

    /// Exact membership test against the family set of the domain.
    pub fn is_valid(&self) -> bool {
        let Ok(log_dom) = self.domain.log_image() else {
            return false;
        };
        match self.kind {
            BorosFamilyKind::Identity => true,
            BorosFamilyKind::Linear { c } => c > 0.0 && translation_range(&log_dom).contains(c.ln()),
            BorosFamilyKind::InverseSquare { c } => {
                c > 0.0 && log_dom.kind() == IntervalKind::FullLine
            }
        }
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        match self.kind {
            BorosFamilyKind::Identity => x,
            BorosFamilyKind::Linear { c } => c * x,
            BorosFamilyKind::InverseSquare { c } => c / (x * x),
        }
    }
}

/// Conjugate a multiplicative candidate f: J → J (J ⊂ (0,∞)) to the additive
/// side: g = log ∘ f ∘ exp on log J. Closed forms map to closed forms
/// (c·xᵖ becomes p·x + log c); expressions wrap symbolically; grid maps are
/// transported knot by knot.
pub fn conjugate_to_additive(f: &SelfMap) -> Result<SelfMap, PlieError> {
    use crate::domain::MapKind;
    let domain = f.domain().log_image()?;
    match f.kind() {
        MapKind::PowerLaw { coeff, exponent } => {
            Ok(SelfMap::affine(*exponent, coeff.ln(), domain))
        }
        MapKind::Affine { slope, intercept } => {
            if *intercept == 0.0 && *slope > 0.0 {
                Ok(SelfMap::affine(1.0, slope.ln(), domain))
            } else {
                let inner = crate::domain::affine_ast(*slope, *intercept)
                    .substitute(&ExprAst::Call(Func::Exp, Box::new(ExprAst::Var)));
                Ok(SelfMap::from_expr(
                    ExprAst::Call(Func::Log, Box::new(inner)),
                    domain,
                ))
            }
        }
        MapKind::GridMap { knots, values } => {
            if knots[0] <= 0.0 || values.iter().any(|&v| v <= 0.0) {
                return Err(PlieError::Domain(
                    "grid map reaches non-positive values; cannot conjugate by log".into(),
                ));
            }
            let lk: Vec<f64> = knots.iter().map(|k| k.ln()).collect();
            let lv: Vec<f64> = values.iter().map(|v| v.ln()).collect();
            SelfMap::grid_map(lk, lv, domain)
        }
        MapKind::Expr { ast } => {
            let inner = ast.substitute(&ExprAst::Call(Func::Exp, Box::new(ExprAst::Var)));
            Ok(SelfMap::from_expr(
                ExprAst::Call(Func::Log, Box::new(inner)),
                domain,
            ))
        }
    }
}

/// Conjugate an additive candidate g: I → I to the multiplicative side:
/// f = exp ∘ g ∘ log on exp I. Every affine a·x + b becomes the power law
/// e^b·xᵃ.
pub fn conjugate_to_multiplicative(g: &SelfMap) -> Result<SelfMap, PlieError> {
    use crate::domain::MapKind;
    let domain = g.domain().exp_image();
    match g.kind() {
        MapKind::Affine { slope, intercept } => {
            if *slope == 1.0 && *intercept == 0.0 {
                Ok(SelfMap::identity(domain))
            } else {
                SelfMap::power_law(intercept.exp(), *slope, domain)
            }
        }
        MapKind::PowerLaw { coeff, exponent } => {
            let inner = crate::domain::power_ast(*coeff, *exponent)
                .substitute(&ExprAst::Call(Func::Log, Box::new(ExprAst::Var)));
            Ok(SelfMap::from_expr(
                ExprAst::Call(Func::Exp, Box::new(inner)),
                domain,
            ))
        }
        MapKind::GridMap { knots, values } => {
            let ek: Vec<f64> = knots.iter().map(|k| k.exp()).collect();
            let ev: Vec<f64> = values.iter().map(|v| v.exp()).collect();
            SelfMap::grid_map(ek, ev, domain)
        }
        MapKind::Expr { ast } => {
            let inner = ast.substitute(&ExprAst::Call(Func::Log, Box::new(ExprAst::Var)));
            Ok(SelfMap::from_expr(
                ExprAst::Call(Func::Exp, Box::new(inner)),
                domain,
            ))
        }
    }
}

/// Verification report for the multiplicative equation.
#[derive(Debug, Clone, Serialize)]
pub struct BorosReport {
    pub candidate: String,
    pub domain: Interval,
    /// Window in x-space the log grid spans.
    pub window: Option<(f64, f64)>,
    pub grid_size: usize,
    pub self_map_ok: bool,
    /// sup over the log grid of |f³(x)·x² − f(x)³| / max(1, x², f(x)³).
    pub residual_sup: f64,
    pub flags: Vec<String>,
}

/// Scale-safe residual of the Boros equation at one point. Far outside
/// [1e−150, 1e150] the iterates are formed in log space through the
/// conjugated map, so x² and f(x)³ never overflow.
pub fn boros_residual(f: &SelfMap, x: f64) -> Result<f64, PlieError> {
    if !(x > 0.0) {
        return Err(PlieError::Domain(format!("Boros residual needs x > 0, got {x}")));
    }
    if (1e-150..=1e150).contains(&x) {
        let orbit = f.orbit(x, 3)?;
        let (f1, f3) = (orbit.values[1], orbit.values[3]);
        if f1 <= 0.0 {
            return Err(PlieError::Eval {
                x,
                reason: "candidate leaves the positive axis".into(),
            });
        }
        let lhs = f3 * x * x;
        let rhs = f1 * f1 * f1;
        if lhs.is_finite() && rhs.is_finite() {
            let denom = (x * x).max(rhs).max(1.0);
            return Ok((lhs - rhs).abs() / denom);
        }
        // fall through to the log-space path on overflow
    }
    let g = conjugate_to_additive(f)?;
    let u = x.ln();
    let orbit = g.orbit(u, 3)?;
    let l1 = orbit.values[3] + 2.0 * u; // log of f³(x)·x²
    let l2 = 3.0 * orbit.values[1]; // log of f(x)³
    let m = 0.0f64.max(2.0 * u).max(l2);
    Ok(((l1 - m).exp() - (l2 - m).exp()).abs())
}

/// Verify a multiplicative candidate on a log-spaced grid. `window` is in
/// x-space and is required whenever log J is unbounded (J touching 0 or ∞).
pub fn verify_boros(
    f: &SelfMap,
    grid_size: usize,
    window: Option<(f64, f64)>,
) -> Result<BorosReport, PlieError> {
    if grid_size < 3 {
        return Err(PlieError::Config("verification needs a grid of at least 3".into()));
    }
    let log_dom = f.domain().log_image()?;
    let self_map = f.check_self_map(grid_size.min(257))?;
    if !self_map.is_self_map {
        let witness = self_map.witness.unwrap_or(f64::NAN);
        let value = f.evaluate(witness).unwrap_or(f64::NAN);
        return Err(PlieError::Escape {
            start: witness,
            step: 1,
            value,
        });
    }
    let log_window = match window {
        Some((a, b)) => {
            if !(a > 0.0 && b > a) {
                return Err(PlieError::Config(format!(
                    "window must satisfy 0 < a < b, got ({a}, {b})"
                )));
            }
            Some((a.ln(), b.ln()))
        }
        None => None,
    };
    let xs = match log_window {
        Some(w) => log_spaced_grid(f.domain(), grid_size, w)?,
        None => {
            if log_dom.is_bounded() {
                let span = (log_dom.lo(), log_dom.hi());
                log_spaced_grid(f.domain(), grid_size, span)?
            } else {
                return Err(PlieError::Config(format!(
                    "log of {} is unbounded: an explicit window is required",
                    f.domain()
                )));
            }
        }
    };
    let mut sup = 0.0f64;
    for &x in &xs {
        sup = sup.max(boros_residual(f, x)?);
    }
    Ok(BorosReport {
        candidate: f.describe(),
        domain: *f.domain(),
        window,
        grid_size,
        self_map_ok: true,
        residual_sup: sup,
        flags: Vec::new(),
    })
}

/// Symbolic Boros family description, conjugated from the additive side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BorosFamilySpec {
    pub name: &'static str,
    pub parameter_range: Option<Interval>,
}

impl BorosFamilySpec {
    pub fn admits(&self, kind: &BorosFamilyKind) -> bool {
        match (self.name, kind) {
            ("identity", BorosFamilyKind::Identity) => true,
            ("identity", BorosFamilyKind::Linear { c }) => *c == 1.0,
            ("linear", BorosFamilyKind::Linear { c }) => {
                self.parameter_range.map_or(false, |r| r.contains(*c))
            }
            ("linear", BorosFamilyKind::Identity) => {
                self.parameter_range.map_or(false, |r| r.contains(1.0))
            }
            ("inverse_square", BorosFamilyKind::InverseSquare { c }) => {
                self.parameter_range.map_or(false, |r| r.contains(*c))
            }
            _ => false,
        }
    }
}

/// The Boros family set of J, derived by conjugating the additive family
/// set of log J (parameter ranges map through exp).
pub fn enumerate_boros_families(j: &Interval) -> Result<Vec<BorosFamilySpec>, PlieError> {
    let log_dom = j.log_image()?;
    Ok(enumerate_families(&log_dom)
        .into_iter()
        .map(conjugate_spec)
        .collect())
}

fn conjugate_spec(spec: FamilySpec) -> BorosFamilySpec {
    match spec.name {
        "identity" => BorosFamilySpec {
            name: "identity",
            parameter_range: None,
        },
        "translation" => BorosFamilySpec {
            name: "linear",
            parameter_range: spec.parameter_range.map(|r| r.exp_image()),
        },
        "affine_neg2" => BorosFamilySpec {
            name: "inverse_square",
            parameter_range: spec.parameter_range.map(|r| r.exp_image()),
        },
        other => unreachable!("unknown additive family {other}"),
    }
}

//! Residual minimisation over monotone piecewise-linear self-maps.
//!
//! The solver is the empirical companion of the classification theory: on a
//! bounded interval (or a finite window standing in for a half-line or ℝ)
//! it searches strictly monotone grid maps for small equation residuals and
//! classifies what it finds. Repeated seeded runs from random
//! initialisations support the completeness of the closed-form families at
//! desk scale: increasing searches land on family members, decreasing
//! searches on I ≠ ℝ stall at a residual floor.
//!
//! Monotonicity is enforced by construction (increments live in log scale),
//! self-map feasibility by renormalising values into the domain closure
//! after each accepted step. Iterates that leave the knot range are clamped
//! and the knot flagged; flagged knots are excluded from the objective mean
//! but reported.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_candidate, FamilyKind, SolutionFamily};
use crate::domain::{Interval, IntervalKind, SelfMap};
use crate::error::PlieError;

/// Residual below which a solver run counts as having found a solution.
/// Calibration constant of this artifact (fixed by the run corpus), not a
/// claim of the underlying theory.
pub const SUCCESS_RESIDUAL: f64 = 1e-8;

/// Sup-distance to the family set below which a found solution counts as
/// classified. Calibration constant, as above.
pub const SUCCESS_DISTANCE: f64 = 1e-2;

/// Residual floor used to flag that a decreasing-mode search found no
/// solution. Calibration constant, as above.
pub const NO_DECREASING_FLOOR: f64 = 1e-4;

/// Finite-difference step for gradient estimation.
const FD_STEP: f64 = 1e-6;

/// A strictly monotone piecewise-linear map on equispaced knots.
///
/// Values are reconstructed from an anchor and log-scale increments, then
/// renormalised into the domain closure, so every parameter vector yields a
/// valid strictly monotone candidate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneGridMap {
    pub domain: Interval,
    /// Knot span: equals the domain for bounded domains, an explicit window
    /// otherwise.
    pub window: (f64, f64),
    pub anchor: f64,
    /// log of the m positive value increments (m + 1 knots).
    pub log_increments: Vec<f64>,
    /// Increasing reconstruction if true, decreasing otherwise.
    pub increasing: bool,
}

impl MonotoneGridMap {
    pub fn knot_count(&self) -> usize {
        self.log_increments.len() + 1
    }

    pub fn knots(&self) -> Vec<f64> {
        let (w0, w1) = self.window;
        let m = self.log_increments.len();
        (0..=m)
            .map(|k| w0 + (w1 - w0) * k as f64 / m as f64)
            .collect()
    }

    /// Reconstructed values: anchor ± cumulative exp(log-increments),
    /// renormalised into the domain closure. Strictly monotone for every
    /// parameter vector; increments are floored at 1e−12 of the largest one
    /// so no step is absorbed by rounding.
    pub fn values(&self) -> Vec<f64> {
        let m = self.log_increments.len();
        let mut ds: Vec<f64> = self
            .log_increments
            .iter()
            .map(|&p| p.min(300.0).exp().max(1e-300))
            .collect();
        let dmax = ds.iter().copied().fold(0.0f64, f64::max);
        let floor = dmax * 1e-12;
        for d in &mut ds {
            *d = d.max(floor);
        }
        let mut raw = Vec::with_capacity(m + 1);
        raw.push(0.0f64);
        let mut acc = 0.0f64;
        for &d in &ds {
            acc += d;
            raw.push(acc);
        }
        let span = acc;
        let (dlo, dhi) = (self.domain.lo(), self.domain.hi());
        let len = dhi - dlo; // may be infinite
        let s = if span.is_finite() && len.is_finite() && span > len {
            len / span
        } else {
            1.0
        };
        if self.increasing {
            let lo_bound = if dlo.is_finite() { dlo } else { f64::NEG_INFINITY };
            let hi_bound = if dhi.is_finite() { dhi - span * s } else { f64::INFINITY };
            let v0 = self.anchor.clamp(lo_bound, hi_bound.max(lo_bound));
            raw.iter().map(|&d| v0 + d * s).collect()
        } else {
            let lo_bound = if dlo.is_finite() { dlo + span * s } else { f64::NEG_INFINITY };
            let hi_bound = if dhi.is_finite() { dhi } else { f64::INFINITY };
            let v0 = self.anchor.clamp(lo_bound.min(hi_bound), hi_bound);
            raw.iter().map(|&d| v0 - d * s).collect()
        }
    }

    /// Sample an existing map onto the knot grid, clamping values into the
    /// domain closure.
    pub fn from_samples(
        map: &SelfMap,
        window: (f64, f64),
        grid_size: usize,
        increasing: bool,
    ) -> Result<Self, PlieError> {
        if grid_size < 3 {
            return Err(PlieError::Config("grid size must be at least 3".into()));
        }
        let domain = *map.domain();
        let m = grid_size - 1;
        let (w0, w1) = window;
        if !(w0 < w1) || !w0.is_finite() || !w1.is_finite() {
            return Err(PlieError::Config(format!("invalid window [{w0}, {w1}]")));
        }
        let knots: Vec<f64> = (0..=m)
            .map(|k| w0 + (w1 - w0) * k as f64 / m as f64)
            .collect();
        let mut values = Vec::with_capacity(m + 1);
        for &x in &knots {
            let v = map.evaluate(x)?;
            let clamped = v
                .min(if domain.hi().is_finite() { domain.hi() } else { v })
                .max(if domain.lo().is_finite() { domain.lo() } else { v });
            values.push(clamped);
        }
        Self::from_values(domain, window, &values, increasing)
    }

    /// Build from explicit knot values, flooring increments at a small
    /// positive fraction of the uniform step so the log parameterisation is
    /// well defined.
    pub fn from_values(
        domain: Interval,
        window: (f64, f64),
        values: &[f64],
        increasing: bool,
    ) -> Result<Self, PlieError> {
        if values.len() < 3 {
            return Err(PlieError::Config("need at least 3 knot values".into()));
        }
        let m = values.len() - 1;
        let h = (window.1 - window.0) / m as f64;
        let floor = 1e-12 * h.abs().max(1e-12);
        let mut log_increments = Vec::with_capacity(m);
        for w in values.windows(2) {
            let d = if increasing { w[1] - w[0] } else { w[0] - w[1] };
            log_increments.push(d.max(floor).ln());
        }
        Ok(MonotoneGridMap {
            domain,
            window,
            anchor: values[0],
            log_increments,
            increasing,
        })
    }

    /// View as a general grid map for classification and reporting.
    pub fn to_self_map(&self) -> Result<SelfMap, PlieError> {
        SelfMap::grid_map(self.knots(), self.values(), self.domain)
    }

    fn interp(&self, values: &[f64], x: f64) -> (f64, bool) {
        let (w0, w1) = self.window;
        if x <= w0 {
            return (values[0], x < w0);
        }
        if x >= w1 {
            return (*values.last().unwrap(), x > w1);
        }
        let m = values.len() - 1;
        let t = (x - w0) / (w1 - w0) * m as f64;
        let i = (t.floor() as usize).min(m - 1);
        let frac = t - i as f64;
        (values[i] + frac * (values[i + 1] - values[i]), false)
    }

    /// Per-knot residuals g³(x) − 3g(x) + 2x with clamp flags.
    pub fn residuals(&self) -> Vec<KnotResidual> {
        let knots = self.knots();
        let values = self.values();
        knots
            .iter()
            .zip(&values)
            .map(|(&x, &v1)| {
                let (v2, c2) = self.interp(&values, v1);
                let (v3, c3) = self.interp(&values, v2);
                KnotResidual {
                    x,
                    residual: v3 - 3.0 * v1 + 2.0 * x,
                    clamped: c2 || c3,
                }
            })
            .collect()
    }
}

/// Residual of the equation at one knot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KnotResidual {
    pub x: f64,
    pub residual: f64,
    pub clamped: bool,
}

/// Mean squared residual over unclamped knots (all knots when every one is
/// clamped), summed pairwise for an order-independent reduction.
pub fn objective(map: &MonotoneGridMap) -> f64 {
    let rs = map.residuals();
    let mut sq: Vec<f64> = rs
        .iter()
        .filter(|r| !r.clamped)
        .map(|r| r.residual * r.residual)
        .collect();
    if sq.is_empty() {
        sq = rs.iter().map(|r| r.residual * r.residual).collect();
    }
    let n = sq.len();
    pairwise_sum(&sq) / n as f64
}

fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// Solver settings. Defaults: 65 knots, 20000 iterations, step 1e−2,
/// tolerance 1e−10, increasing search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub grid_size: usize,
    pub max_iterations: usize,
    pub step: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub monotone: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            grid_size: 65,
            max_iterations: 20_000,
            step: 1e-2,
            tolerance: 1e-10,
            seed: 0,
            monotone: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), PlieError> {
        if self.grid_size < 3 {
            return Err(PlieError::Config("grid_size must be at least 3".into()));
        }
        if self.max_iterations == 0 {
            return Err(PlieError::Config("max_iterations must be positive".into()));
        }
        if !(self.step > 0.0) {
            return Err(PlieError::Config("step must be positive".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(PlieError::Config("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of one solve run.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    /// Objective (mean squared residual) at the returned map.
    pub final_residual: f64,
    pub iterations_used: usize,
    pub converged: bool,
    pub nearest_family: Option<SolutionFamily>,
    pub distance_sup: Option<f64>,
    /// Residual sup of the classification grid (clamped samples excluded).
    pub residual_sup: Option<f64>,
    pub clamped_knots: usize,
    /// Objective values sampled along the run (at most 129 points).
    pub trace: Vec<f64>,
    pub flags: Vec<String>,
    pub config: SolverConfig,
    pub map: MonotoneGridMap,
}

/// Random initialisation: the identity (reflection, for decreasing mode)
/// whose increments carry uniform noise of amplitude 0.2·(window length),
/// floored at 1% of the uniform increment.
pub fn random_init(
    config: &SolverConfig,
    domain: &Interval,
    window: (f64, f64),
) -> MonotoneGridMap {
    seeded_init(config.seed, config.grid_size, config.monotone, domain, window)
}

fn seeded_init(
    seed: u64,
    grid_size: usize,
    increasing: bool,
    domain: &Interval,
    window: (f64, f64),
) -> MonotoneGridMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = grid_size - 1;
    let (w0, w1) = window;
    let len = w1 - w0;
    let h = len / m as f64;
    let amplitude = 0.2 * len;
    let floor = 0.2 * h;
    let log_increments: Vec<f64> = (0..m)
        .map(|_| {
            let noise = rng.gen_range(-amplitude..amplitude);
            (h + noise).max(floor).ln()
        })
        .collect();
    MonotoneGridMap {
        domain: *domain,
        window,
        anchor: if increasing { w0 } else { w1 },
        log_increments,
        increasing,
    }
}

fn canonicalize(map: &mut MonotoneGridMap) {
    let values = map.values();
    let rebuilt = MonotoneGridMap::from_values(map.domain, map.window, &values, map.increasing)
        .expect("reconstructed values are valid");
    map.anchor = rebuilt.anchor;
    map.log_increments = rebuilt.log_increments;
}

/// Deterministic local search: steepest descent on (anchor, log-increments)
/// with central-difference gradients and a halving/doubling step-size
/// schedule. Stops at the tolerance, at the iteration budget, or when no
/// descent direction survives 60 halvings.
pub fn solve(
    config: &SolverConfig,
    domain: &Interval,
    window: Option<(f64, f64)>,
    init: Option<MonotoneGridMap>,
) -> Result<SolveReport, PlieError> {
    config.validate()?;
    if domain.kind() == IntervalKind::Degenerate {
        // the unique self-map of a point solves the equation; nothing to search
        let p = domain.lo();
        let m = config.grid_size - 1;
        let map = MonotoneGridMap {
            domain: *domain,
            window: (p - 0.5, p + 0.5),
            anchor: p,
            log_increments: vec![-300.0; m],
            increasing: config.monotone,
        };
        return Ok(SolveReport {
            final_residual: 0.0,
            iterations_used: 0,
            converged: true,
            nearest_family: Some(SolutionFamily {
                kind: FamilyKind::Identity,
                domain: *domain,
            }),
            distance_sup: Some(0.0),
            residual_sup: Some(0.0),
            clamped_knots: 0,
            trace: vec![0.0],
            flags: vec!["degenerate_domain_identity_forced".to_string()],
            config: config.clone(),
            map,
        });
    }
    let window = match window {
        Some(w) => {
            if !(w.0 < w.1) || !w.0.is_finite() || !w.1.is_finite() {
                return Err(PlieError::Config(format!("invalid window [{}, {}]", w.0, w.1)));
            }
            w
        }
        None => {
            if domain.is_bounded() {
                (domain.lo(), domain.hi())
            } else {
                return Err(PlieError::Config(format!(
                    "domain {domain} is not bounded: supply a finite window"
                )));
            }
        }
    };

    let mut map = match init {
        Some(m) => {
            if m.knot_count() != config.grid_size {
                return Err(PlieError::Config(format!(
                    "init has {} knots, config wants {}",
                    m.knot_count(),
                    config.grid_size
                )));
            }
            m
        }
        None => random_init(config, domain, window),
    };
    canonicalize(&mut map);

    let mut flags: Vec<String> = Vec::new();
    let mut obj = objective(&map);
    let mut best = (obj, map.clone());
    let mut full_trace = vec![obj];
    let mut iterations = 0usize;
    let n_params = map.log_increments.len() + 1;

    // Per-coordinate adaptive steps on the gradient sign: halve on a sign
    // flip, grow on agreement. This keeps the badly scaled log-increment
    // coordinates moving at comparable speeds. Stalls escalate to a step
    // reset, then to a restart from a fresh sub-seeded initialisation, all
    // within the one iteration budget.
    const STALL_WINDOW: usize = 300;
    const STALL_RELATIVE: f64 = 1e-2;
    const MAX_ATTEMPTS: usize = 8;
    let window_len = window.1 - window.0;
    let step_cap = |i: usize| if i == 0 { 0.5 * window_len } else { 1.0 };
    let mut steps = vec![config.step; n_params];
    let mut prev_sign = vec![0.0f64; n_params];
    let mut window_reference = (0usize, best.0);
    let mut attempts = 0usize;

    while iterations < config.max_iterations && best.0 > config.tolerance {
        // central-difference gradient in (anchor, log-increments)
        let mut grad = vec![0.0f64; n_params];
        for i in 0..n_params {
            let mut plus = map.clone();
            let mut minus = map.clone();
            if i == 0 {
                plus.anchor += FD_STEP;
                minus.anchor -= FD_STEP;
            } else {
                plus.log_increments[i - 1] += FD_STEP;
                minus.log_increments[i - 1] -= FD_STEP;
            }
            grad[i] = (objective(&plus) - objective(&minus)) / (2.0 * FD_STEP);
        }

        let mut moved = false;
        for i in 0..n_params {
            let sign = if grad[i] > 0.0 {
                1.0
            } else if grad[i] < 0.0 {
                -1.0
            } else {
                0.0
            };
            if sign == 0.0 {
                prev_sign[i] = 0.0;
                continue;
            }
            if prev_sign[i] * sign < 0.0 {
                // overshoot: halve and hold this coordinate for one step
                steps[i] = (steps[i] * 0.5).max(1e-18);
                prev_sign[i] = 0.0;
                continue;
            }
            let delta = sign * steps[i];
            if i == 0 {
                map.anchor -= delta;
            } else {
                map.log_increments[i - 1] -= delta;
            }
            steps[i] = (steps[i] * 1.2).min(step_cap(i));
            prev_sign[i] = sign;
            moved = true;
        }

        obj = objective(&map);
        if obj < best.0 {
            best = (obj, map.clone());
        }
        iterations += 1;
        full_trace.push(obj);

        let hard_stall = !moved && steps.iter().all(|&s| s <= 1e-16);
        let window_done = iterations - window_reference.0 >= STALL_WINDOW;
        let slow = window_done
            && window_reference.1 - best.0 <= STALL_RELATIVE * best.0.max(f64::MIN_POSITIVE);
        if hard_stall || slow {
            attempts += 1;
            if attempts >= MAX_ATTEMPTS {
                flags.push("stalled_at_local_minimum".to_string());
                break;
            }
            steps = vec![config.step; n_params];
            prev_sign = vec![0.0f64; n_params];
            if attempts % 2 == 0 {
                // every other escalation: restart from a new initialisation
                let sub_seed = config
                    .seed
                    .wrapping_add((attempts as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                map = seeded_init(sub_seed, config.grid_size, config.monotone, domain, window);
                obj = objective(&map);
                if obj < best.0 {
                    best = (obj, map.clone());
                }
            }
            window_reference = (iterations, best.0);
        } else if window_done {
            window_reference = (iterations, best.0);
        }
    }

    if attempts > 0 && !flags.iter().any(|f| f == "stalled_at_local_minimum") {
        flags.push(format!("escalations_{attempts}"));
    }
    map = best.1;
    canonicalize(&mut map);
    obj = objective(&map);
    let converged = obj <= config.tolerance;
    if !config.monotone && obj >= NO_DECREASING_FLOOR {
        flags.push("no_decreasing_solution".to_string());
    }

    let clamped_knots = map.residuals().iter().filter(|r| r.clamped).count();
    let classify_window = if domain.is_bounded() { None } else { Some(window) };
    let classification = classify_candidate(&map.to_self_map()?, config.grid_size, classify_window)?;

    Ok(SolveReport {
        final_residual: obj,
        iterations_used: iterations,
        converged,
        nearest_family: classification.nearest_family,
        distance_sup: classification.distance_sup,
        residual_sup: Some(classification.residual_sup),
        clamped_knots,
        trace: downsample(&full_trace, 129),
        flags,
        config: config.clone(),
        map,
    })
}

fn downsample(trace: &[f64], max_len: usize) -> Vec<f64> {
    if trace.len() <= max_len {
        return trace.to_vec();
    }
    let stride = trace.len().div_ceil(max_len - 1);
    let mut out: Vec<f64> = trace.iter().copied().step_by(stride).collect();
    if *out.last().unwrap() != *trace.last().unwrap() {
        out.push(*trace.last().unwrap());
    }
    out
}

/// Aggregate of repeated seeded solve runs.
#[derive(Debug, Clone, Serialize)]
pub struct FalsifySummary {
    pub domain: Interval,
    pub window: Option<(f64, f64)>,
    pub runs: usize,
    pub increasing: bool,
    pub successes: usize,
    pub success_rate: f64,
    /// Largest final residual among successful runs.
    pub worst_residual: f64,
    /// Largest family distance among successful runs.
    pub worst_distance: f64,
    /// Smallest final residual across all runs.
    pub min_residual: f64,
    pub flags: Vec<String>,
}

/// Run `runs` independent solves from seeds `seed`, `seed+1`, … and report
/// how many land on the domain's family set (residual below
/// [`SUCCESS_RESIDUAL`], sup-distance below [`SUCCESS_DISTANCE`]). Runs are
/// distributed across a worker pool capped by `PLIE_THREADS`; per-run seeds
/// make the outcome independent of scheduling.
pub fn falsification_suite(
    domain: &Interval,
    window: Option<(f64, f64)>,
    runs: usize,
    seed: u64,
    increasing: bool,
) -> Result<FalsifySummary, PlieError> {
    if runs < 1 {
        return Err(PlieError::Config("runs must be at least 1".into()));
    }
    let reports = run_all(domain, window, runs, seed, increasing)?;

    let mut successes = 0usize;
    let mut worst_residual = 0.0f64;
    let mut worst_distance = 0.0f64;
    let mut min_residual = f64::INFINITY;
    for r in &reports {
        min_residual = min_residual.min(r.final_residual);
        let dist = r.distance_sup.unwrap_or(f64::INFINITY);
        if r.final_residual < SUCCESS_RESIDUAL && dist < SUCCESS_DISTANCE {
            successes += 1;
            worst_residual = worst_residual.max(r.final_residual);
            worst_distance = worst_distance.max(dist);
        }
    }
    let mut flags = Vec::new();
    if !increasing && min_residual >= NO_DECREASING_FLOOR {
        flags.push("no_decreasing_solution".to_string());
    }
    Ok(FalsifySummary {
        domain: *domain,
        window,
        runs,
        increasing,
        successes,
        success_rate: successes as f64 / runs as f64,
        worst_residual,
        worst_distance,
        min_residual,
        flags,
    })
}

fn run_all(
    domain: &Interval,
    window: Option<(f64, f64)>,
    runs: usize,
    seed: u64,
    increasing: bool,
) -> Result<Vec<SolveReport>, PlieError> {
    use rayon::prelude::*;
    let pool = worker_pool()?;
    pool.install(|| {
        (0..runs)
            .into_par_iter()
            .map(|r| {
                let config = SolverConfig {
                    seed: seed.wrapping_add(r as u64),
                    monotone: increasing,
                    ..SolverConfig::default()
                };
                solve(&config, domain, window, None)
            })
            .collect()
    })
}

/// Worker pool capped by the PLIE_THREADS environment variable.
fn worker_pool() -> Result<rayon::ThreadPool, PlieError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("PLIE_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                builder = builder.num_threads(n);
            }
        }
    }
    builder
        .build()
        .map_err(|e| PlieError::Config(format!("worker pool: {e}")))
}

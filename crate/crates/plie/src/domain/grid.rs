//! Sample grids over intervals.
//!
//! Bounded intervals are sampled uniformly; open endpoints are excluded by an
//! offset of one grid step. Unbounded intervals have no canonical sampling, so
//! the default grid places points uniformly in arc-tangent space (dense near
//! the finite part, sparse towards ±∞) after clipping to a finite window.

use crate::domain::Interval;
use crate::error::PlieError;

/// Default clipping window for grids over unbounded intervals.
pub const DEFAULT_WINDOW: (f64, f64) = (-1e6, 1e6);

/// Sample `n` points of `interval`. Uses uniform spacing on bounded
/// intervals and arc-tangent spacing (clipped to `window`, default
/// [`DEFAULT_WINDOW`]) on unbounded ones.
pub fn sample_grid(
    interval: &Interval,
    n: usize,
    window: Option<(f64, f64)>,
) -> Result<Vec<f64>, PlieError> {
    if n < 1 {
        return Err(PlieError::Config("grid size must be at least 1".into()));
    }
    let lo = interval.lo();
    let hi = interval.hi();
    if lo == hi {
        return Ok(vec![lo]);
    }
    if interval.is_bounded() {
        return Ok(uniform(lo, hi, interval.lo_closed(), interval.hi_closed(), n));
    }
    let (wlo, whi) = window.unwrap_or(DEFAULT_WINDOW);
    if !(wlo < whi) || !wlo.is_finite() || !whi.is_finite() {
        return Err(PlieError::Config(format!(
            "invalid window [{wlo}, {whi}]"
        )));
    }
    // Clip to the window; a clipped-off infinite endpoint becomes closed.
    let (clo, lo_closed) = if lo < wlo { (wlo, true) } else { (lo, interval.lo_closed()) };
    let (chi, hi_closed) = if hi > whi { (whi, true) } else { (hi, interval.hi_closed()) };
    if !(clo < chi) {
        return Err(PlieError::Config(format!(
            "window [{wlo}, {whi}] does not meet interval {interval}"
        )));
    }
    let ts = uniform(clo.atan(), chi.atan(), lo_closed, hi_closed, n);
    // tan(atan(x)) can land an ulp outside the interval
    Ok(ts.into_iter().map(|t| t.tan().clamp(clo, chi)).collect())
}

/// Uniform grid over an explicit finite window intersected with `interval`.
/// Used where a window must be visible in reports (verification grids over
/// half-lines and ℝ).
pub fn windowed_grid(
    interval: &Interval,
    n: usize,
    window: (f64, f64),
) -> Result<Vec<f64>, PlieError> {
    let (wlo, whi) = window;
    if !(wlo < whi) || !wlo.is_finite() || !whi.is_finite() {
        return Err(PlieError::Config(format!("invalid window [{wlo}, {whi}]")));
    }
    let (lo, lo_closed) = if interval.lo() < wlo {
        (wlo, true)
    } else {
        (interval.lo(), interval.lo_closed())
    };
    let (hi, hi_closed) = if interval.hi() > whi {
        (whi, true)
    } else {
        (interval.hi(), interval.hi_closed())
    };
    if lo == hi {
        return Ok(vec![lo]);
    }
    if !(lo < hi) {
        return Err(PlieError::Config(format!(
            "window [{wlo}, {whi}] does not meet interval {interval}"
        )));
    }
    if n < 1 {
        return Err(PlieError::Config("grid size must be at least 1".into()));
    }
    Ok(uniform(lo, hi, lo_closed, hi_closed, n))
}

/// Log-spaced grid over an interval of positives: the exponential image of a
/// uniform grid on the log of the interval clipped to `log_window`. These
/// grids correspond point by point to uniform grids of the conjugated
/// additive problem.
pub fn log_spaced_grid(
    interval: &Interval,
    n: usize,
    log_window: (f64, f64),
) -> Result<Vec<f64>, PlieError> {
    let log_dom = interval.log_image()?;
    Ok(windowed_grid(&log_dom, n, log_window)?
        .into_iter()
        .map(f64::exp)
        .collect())
}

/// `n` points from `lo` to `hi`; an open endpoint is pushed inwards by one
/// grid step, so (a,b) with n points has step (b−a)/(n+1).
fn uniform(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool, n: usize) -> Vec<f64> {
    if n == 1 {
        let mid = 0.5 * (lo + hi);
        let x = if lo_closed { lo } else if hi_closed { hi } else { mid };
        return vec![x];
    }
    let off_lo = usize::from(!lo_closed);
    let off_hi = usize::from(!hi_closed);
    let segments = (n - 1 + off_lo + off_hi) as f64;
    let step = (hi - lo) / segments;
    (0..n)
        .map(|k| {
            let x = lo + (k + off_lo) as f64 * step;
            // guard against rounding drift past a closed upper endpoint
            if x > hi {
                hi
            } else {
                x
            }
        })
        .collect()
}

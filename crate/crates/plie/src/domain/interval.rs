//! Real intervals with extended endpoints.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ParseError, PlieError};

/// Shape of an interval, derived from its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalKind {
    /// A single point.
    Degenerate,
    /// Both endpoints finite, `lo < hi`.
    Bounded,
    /// Unbounded on exactly one side.
    HalfLine,
    /// All of ℝ.
    FullLine,
}

/// An interval of extended reals. Infinite endpoints are always open;
/// a degenerate interval (`lo == hi`) is always closed on both sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self, PlieError> {
        if lo.is_nan() || hi.is_nan() {
            return Err(PlieError::Domain("interval endpoint is NaN".into()));
        }
        if lo > hi {
            return Err(PlieError::Domain(format!(
                "interval endpoints out of order: {lo} > {hi}"
            )));
        }
        if lo.is_infinite() && lo_closed || hi.is_infinite() && hi_closed {
            return Err(PlieError::Domain(
                "an infinite endpoint cannot be closed".into(),
            ));
        }
        if lo == hi && !(lo_closed && hi_closed) {
            return Err(PlieError::Domain(format!(
                "degenerate interval at {lo} must be closed on both sides"
            )));
        }
        Ok(Self {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, true, true).expect("valid closed interval")
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, false, false).expect("valid open interval")
    }

    pub fn full_line() -> Self {
        Self::new(f64::NEG_INFINITY, f64::INFINITY, false, false).unwrap()
    }

    pub fn point(x: f64) -> Self {
        Self::closed(x, x)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn kind(&self) -> IntervalKind {
        match (self.lo.is_infinite(), self.hi.is_infinite()) {
            (true, true) => IntervalKind::FullLine,
            (true, false) | (false, true) => IntervalKind::HalfLine,
            (false, false) => {
                if self.lo == self.hi {
                    IntervalKind::Degenerate
                } else {
                    IntervalKind::Bounded
                }
            }
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self.kind(), IntervalKind::Bounded | IntervalKind::Degenerate)
    }

    pub fn contains(&self, x: f64) -> bool {
        if x.is_nan() {
            return false;
        }
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    /// Membership in the closure (both finite endpoints included).
    pub fn closure_contains(&self, x: f64) -> bool {
        !x.is_nan() && x >= self.lo && x <= self.hi && x.is_finite()
    }

    /// Image under log, defined for intervals inside the closure of (0, ∞).
    /// `log 0 = −∞` (open), `log ∞ = +∞` (open).
    pub fn log_image(&self) -> Result<Interval, PlieError> {
        if self.lo < 0.0 || (self.lo == 0.0 && self.lo_closed) {
            return Err(PlieError::Domain(format!(
                "interval {self} is not contained in (0, +inf)"
            )));
        }
        let lo = if self.lo == 0.0 { f64::NEG_INFINITY } else { self.lo.ln() };
        Interval::new(lo, self.hi.ln(), self.lo_closed, self.hi_closed)
    }

    /// Image under exp: `exp(−∞) = 0` (open), `exp(+∞) = +∞` (open).
    pub fn exp_image(&self) -> Interval {
        Interval::new(self.lo.exp(), self.hi.exp(), self.lo_closed, self.hi_closed)
            .expect("exp image is a valid interval")
    }

    pub fn parse(text: &str) -> Result<Interval, PlieError> {
        let s = text.trim();
        if s.eq_ignore_ascii_case("r") {
            return Ok(Interval::full_line());
        }
        let err = |pos: usize, expected: &str, found: &str| {
            PlieError::Parse(ParseError::new(pos, expected, found))
        };
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(err(1, "interval literal", "end of input"));
        }
        let lo_closed = match bytes[0] {
            b'[' => true,
            b'(' => false,
            c => return Err(err(1, "'[' or '('", &(c as char).to_string())),
        };
        let last = *bytes.last().unwrap();
        let hi_closed = match last {
            b']' => true,
            b')' => false,
            c => return Err(err(s.len(), "']' or ')'", &(c as char).to_string())),
        };
        let inner = &s[1..s.len() - 1];
        let comma = inner
            .find(',')
            .ok_or_else(|| err(2, "','", "no separator"))?;
        let (lo_txt, hi_txt) = (inner[..comma].trim(), inner[comma + 1..].trim());
        let lo = parse_endpoint(lo_txt).map_err(|_| err(2, "number or -inf", lo_txt))?;
        let hi = parse_endpoint(hi_txt).map_err(|_| err(comma + 3, "number or inf", hi_txt))?;
        Interval::new(lo, hi, lo_closed, hi_closed)
    }
}

fn parse_endpoint(s: &str) -> Result<f64, ()> {
    let lower = s.to_ascii_lowercase();
    match lower.as_str() {
        "inf" | "+inf" | "infinity" | "+infinity" => Ok(f64::INFINITY),
        "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
        _ => s.parse::<f64>().map_err(|_| ()).and_then(|v| {
            if v.is_nan() {
                Err(())
            } else {
                Ok(v)
            }
        }),
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lb = if self.lo_closed { '[' } else { '(' };
        let rb = if self.hi_closed { ']' } else { ')' };
        let fmt_ep = |v: f64| {
            if v == f64::INFINITY {
                "inf".to_string()
            } else if v == f64::NEG_INFINITY {
                "-inf".to_string()
            } else {
                format!("{v}")
            }
        };
        write!(f, "{lb}{},{}{rb}", fmt_ep(self.lo), fmt_ep(self.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds() {
        assert_eq!(Interval::closed(0.0, 0.0).kind(), IntervalKind::Degenerate);
        assert_eq!(Interval::closed(0.0, 1.0).kind(), IntervalKind::Bounded);
        assert_eq!(
            Interval::new(0.0, f64::INFINITY, true, false).unwrap().kind(),
            IntervalKind::HalfLine
        );
        assert_eq!(Interval::full_line().kind(), IntervalKind::FullLine);
    }

    #[test]
    fn rejects_bad_endpoints() {
        assert!(Interval::new(1.0, 0.0, true, true).is_err());
        assert!(Interval::new(0.0, f64::INFINITY, true, true).is_err());
        assert!(Interval::new(f64::NEG_INFINITY, 0.0, true, true).is_err());
        // empty interval: degenerate must be closed
        assert!(Interval::new(1.0, 1.0, false, false).is_err());
    }

    #[test]
    fn membership_respects_open_endpoints() {
        let i = Interval::new(0.0, 1.0, false, true).unwrap();
        assert!(!i.contains(0.0));
        assert!(i.contains(1.0));
        assert!(i.contains(0.5));
        assert!(i.closure_contains(0.0));
        assert!(!i.contains(f64::NAN));
    }

    #[test]
    fn parse_literals() {
        let i = Interval::parse("[0,1]").unwrap();
        assert_eq!((i.lo(), i.hi(), i.lo_closed(), i.hi_closed()), (0.0, 1.0, true, true));
        let i = Interval::parse("(0, 1)").unwrap();
        assert!(!i.lo_closed() && !i.hi_closed());
        let i = Interval::parse("[1e-3,inf)").unwrap();
        assert_eq!(i.hi(), f64::INFINITY);
        let i = Interval::parse("(-inf,2.5]").unwrap();
        assert_eq!(i.lo(), f64::NEG_INFINITY);
        assert!(i.hi_closed());
        assert_eq!(Interval::parse("R").unwrap(), Interval::full_line());
        assert!(Interval::parse("[inf,0]").is_err());
        assert!(Interval::parse("0,1").is_err());
        assert!(Interval::parse("[0;1]").is_err());
    }

    #[test]
    fn display_roundtrip() {
        for lit in ["[0,1]", "(0,1)", "[0,inf)", "(-inf,2.5]", "(-inf,inf)"] {
            let i = Interval::parse(lit).unwrap();
            let j = Interval::parse(&i.to_string()).unwrap();
            assert_eq!(i, j);
        }
    }

    #[test]
    fn log_exp_images() {
        let j = Interval::new(0.0, 1.0, false, true).unwrap(); // (0,1]
        let i = j.log_image().unwrap(); // (-inf,0]
        assert_eq!(i.lo(), f64::NEG_INFINITY);
        assert_eq!(i.hi(), 0.0);
        assert!(i.hi_closed());
        assert_eq!(i.exp_image(), j);

        assert!(Interval::closed(0.0, 1.0).log_image().is_err());
        assert!(Interval::closed(-1.0, 1.0).log_image().is_err());

        let r = Interval::full_line();
        let pos = r.exp_image(); // (0, inf)
        assert_eq!(pos.lo(), 0.0);
        assert!(!pos.lo_closed());
        assert_eq!(pos.log_image().unwrap(), r);
    }
}

//! Characteristic polynomials and their roots with multiplicities.
//!
//! Substituting g(x) = r·x into a linear iterate relation Σ αₙgⁿ = 0 yields
//! the characteristic equation Σ αₙrⁿ = 0. The polynomials arising here
//! factor over ℚ and their exact multiplicities matter, so rational roots
//! are found first by exact divisor search with repeated deflation; only a
//! (possibly empty) rational-root-free remainder is handed to a numeric
//! root finder.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{ParseError, PlieError};

/// A polynomial in ascending coefficient order, leading coefficient ≠ 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    coeffs: Vec<BigRational>,
}

impl CharPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self, PlieError> {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(PlieError::Domain(
                "characteristic polynomial must have degree at least 1".into(),
            ));
        }
        Ok(CharPoly { coeffs })
    }

    /// Parse a comma-separated ascending coefficient list, e.g. `2,-3,0,1`
    /// for r³ − 3r + 2. Coefficients may be integers, fractions `p/q` or
    /// decimals (converted exactly).
    pub fn parse(text: &str) -> Result<Self, PlieError> {
        let mut coeffs = Vec::new();
        let mut offset = 0usize;
        for part in text.split(',') {
            let pos = offset + 1 + leading_ws(part);
            let token = part.trim();
            let value = parse_rational(token)
                .ok_or_else(|| PlieError::Parse(ParseError::new(pos, "rational coefficient", token)))?;
            coeffs.push(value);
            offset += part.chars().count() + 1;
        }
        CharPoly::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn eval_rational(&self, r: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * r + c;
        }
        acc
    }

    /// Exact synthetic division by (x − r); the caller guarantees r is a root.
    fn deflate(&self, r: &BigRational) -> CharPoly {
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); n - 1];
        let mut carry = self.coeffs[n - 1].clone();
        for k in (0..n - 1).rev() {
            out[k] = carry.clone();
            carry = &self.coeffs[k] + carry * r;
        }
        debug_assert!(carry.is_zero());
        CharPoly { coeffs: out }
    }
}

fn leading_ws(s: &str) -> usize {
    s.chars().take_while(|c| c.is_whitespace()).count()
}

fn parse_rational(token: &str) -> Option<BigRational> {
    if token.is_empty() {
        return None;
    }
    if let Some((num, den)) = token.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Ok(n) = token.parse::<BigInt>() {
        return Some(BigRational::from_integer(n));
    }
    // decimal literal, converted exactly: a.b -> (a·10^k + b)/10^k
    let (sign, rest) = match token.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, token),
    };
    let (int_part, frac_part) = rest.split_once('.')?;
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let int_val: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().ok()?
    };
    let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
    let frac_val: BigInt = frac_part.parse().ok()?;
    Some(BigRational::new(
        (int_val * &scale + frac_val) * BigInt::from(sign),
        scale,
    ))
}

/// A root of the characteristic polynomial.
#[derive(Debug, Clone, PartialEq)]
pub enum Root {
    /// Exact rational root found by divisor search.
    Rational(BigRational),
    /// Real root found numerically.
    Real(f64),
    /// Complex-conjugate pair a ± b·i, b > 0.
    ComplexPair { re: f64, im: f64 },
}

impl Root {
    pub fn approx_re(&self) -> f64 {
        match self {
            Root::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Root::Real(v) => *v,
            Root::ComplexPair { re, .. } => *re,
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::Rational(r) => write!(f, "{r}"),
            Root::Real(v) => write!(f, "{v}"),
            Root::ComplexPair { re, im } => write!(f, "{re} ± {im}i"),
        }
    }
}

/// Roots with multiplicities; multiplicities sum to the degree
/// (a complex pair contributes twice its multiplicity).
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<(Root, usize)>,
}

impl RootSet {
    /// Look up the multiplicity of an exact rational root.
    pub fn multiplicity_of(&self, value: &BigRational) -> usize {
        self.roots
            .iter()
            .find_map(|(r, m)| match r {
                Root::Rational(q) if q == value => Some(*m),
                _ => None,
            })
            .unwrap_or(0)
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots
            .iter()
            .map(|(r, m)| match r {
                Root::ComplexPair { .. } => 2 * m,
                _ => *m,
            })
            .sum()
    }
}

/// All roots of `poly` with multiplicities. Rational roots are found
/// exactly (divisor search over ±p/q with p | α₀', q | α_N' after clearing
/// denominators) and removed by exact deflation; any remaining factor is
/// solved by damped Durand–Kerner iteration refined to 1e−12.
pub fn char_roots(poly: &CharPoly) -> Result<RootSet, PlieError> {
    let mut roots: Vec<(Root, usize)> = Vec::new();
    let mut current = poly.clone();

    loop {
        // strip x^k factors: root 0 with multiplicity k
        let mut zero_mult = 0usize;
        while current.coeffs[0].is_zero() && current.coeffs.len() > 1 {
            current = current.deflate(&BigRational::zero());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Root::Rational(BigRational::zero()), zero_mult));
        }
        if current.degree() == 0 {
            break;
        }
        match find_rational_root(&current) {
            Some(r) => {
                let mut mult = 0usize;
                while current.degree() >= 1 && current.eval_rational(&r).is_zero() {
                    current = current.deflate(&r);
                    mult += 1;
                }
                roots.push((Root::Rational(r), mult));
            }
            None => break,
        }
        if current.degree() == 0 {
            break;
        }
    }

    if current.degree() >= 1 {
        let numeric = numeric_roots(&current)?;
        roots.extend(numeric);
    }

    let set = RootSet { roots };
    debug_assert_eq!(set.total_multiplicity(), poly.degree());
    Ok(set)
}

/// First rational root of `poly`, if any, by exact divisor search.
fn find_rational_root(poly: &CharPoly) -> Option<BigRational> {
    // clear denominators to integer coefficients
    let mut lcm = BigInt::from(1);
    for c in poly.coefficients() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = poly
        .coefficients()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let a0 = ints[0].clone();
    let an = ints.last().unwrap().clone();
    debug_assert!(!an.is_zero());
    if a0.is_zero() {
        return Some(BigRational::zero());
    }
    let ps = small_divisors(&a0.abs());
    let qs = small_divisors(&an.abs());
    for p in &ps {
        for q in &qs {
            for sign in [1i32, -1] {
                let candidate = BigRational::new(p * BigInt::from(sign), q.clone());
                if poly.eval_rational(&candidate).is_zero() {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

/// All positive divisors of |v| by trial division. Characteristic
/// polynomials here have tiny coefficients; the 10⁶ cap guards pathological
/// inputs, falling back to the numeric path beyond it.
fn small_divisors(v: &BigInt) -> Vec<BigInt> {
    let Some(n) = v.to_u64() else {
        return vec![BigInt::from(1), v.clone()];
    };
    if n == 0 {
        return vec![BigInt::from(1)];
    }
    if n > 1_000_000 {
        return vec![BigInt::from(1), BigInt::from(n)];
    }
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            divs.push(BigInt::from(d));
            if d != n / d {
                divs.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    divs.sort();
    divs
}

/// Durand–Kerner iteration on the rational-root-free remainder, with root
/// clustering for (rare) repeated irrational roots.
fn numeric_roots(poly: &CharPoly) -> Result<Vec<(Root, usize)>, PlieError> {
    const TOL: f64 = 1e-12;
    const MAX_ITER: usize = 400;

    let coeffs: Vec<f64> = poly
        .coefficients()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(PlieError::Numeric(
            "polynomial coefficients overflow f64".into(),
        ));
    }
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();

    let eval = |z: (f64, f64)| -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for &c in monic.iter().rev() {
            acc = complex_mul(acc, z);
            acc.0 += c;
        }
        acc
    };

    // standard non-real, non-unit starting points
    let mut zs: Vec<(f64, f64)> = (0..n)
        .map(|k| complex_pow((0.4, 0.9), k + 1))
        .collect();
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom = complex_mul(denom, complex_sub(zs[i], zs[j]));
                }
            }
            let num = eval(zs[i]);
            let step = complex_div(num, denom);
            zs[i] = complex_sub(zs[i], step);
            max_step = max_step.max(complex_abs(step));
        }
        if max_step < TOL {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(PlieError::Numeric(format!(
            "root refinement did not converge within {MAX_ITER} iterations"
        )));
    }

    // cluster equal roots, pair conjugates
    let scale = zs.iter().map(|z| complex_abs(*z)).fold(1.0, f64::max);
    let cluster_tol = 1e-8 * scale;
    let mut used = vec![false; n];
    let mut out: Vec<(Root, usize)> = Vec::new();
    for i in 0..n {
        if used[i] {
            continue;
        }
        let mut members = vec![i];
        for j in i + 1..n {
            if !used[j] && complex_abs(complex_sub(zs[i], zs[j])) < cluster_tol {
                members.push(j);
            }
        }
        for &m in &members {
            used[m] = true;
        }
        let mult = members.len();
        let (mut re, mut im) = (0.0, 0.0);
        for &m in &members {
            re += zs[m].0;
            im += zs[m].1;
        }
        re /= mult as f64;
        im /= mult as f64;
        if im.abs() < cluster_tol {
            out.push((Root::Real(re), mult));
        } else if im > 0.0 {
            // conjugate partner is a separate cluster with im < 0; claim it
            let mut claimed = 0usize;
            for j in 0..n {
                if !used[j]
                    && complex_abs(complex_sub((re, -im), zs[j])) < cluster_tol
                {
                    used[j] = true;
                    claimed += 1;
                }
            }
            if claimed != mult {
                return Err(PlieError::Numeric(
                    "complex roots did not pair into conjugates".into(),
                ));
            }
            out.push((Root::ComplexPair { re, im }, mult));
        } else {
            // negative-imaginary cluster whose partner was not yet seen;
            // emit the pair from this side
            let mut claimed = 0usize;
            for j in 0..n {
                if !used[j] && complex_abs(complex_sub((re, -im), zs[j])) < cluster_tol {
                    used[j] = true;
                    claimed += 1;
                }
            }
            if claimed != mult {
                return Err(PlieError::Numeric(
                    "complex roots did not pair into conjugates".into(),
                ));
            }
            out.push((Root::ComplexPair { re, im: -im }, mult));
        }
    }
    Ok(out)
}

fn complex_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn complex_sub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 - b.0, a.1 - b.1)
}

fn complex_div(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

fn complex_abs(a: (f64, f64)) -> f64 {
    a.0.hypot(a.1)
}

fn complex_pow(base: (f64, f64), k: usize) -> (f64, f64) {
    let mut acc = (1.0, 0.0);
    for _ in 0..k {
        acc = complex_mul(acc, base);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parse_coefficient_lists() {
        let p = CharPoly::parse("2,-3,0,1").unwrap();
        assert_eq!(p.degree(), 3);
        let p = CharPoly::parse("1/2, -0.25, 1").unwrap();
        assert_eq!(p.coefficients()[0], rat(1, 2));
        assert_eq!(p.coefficients()[1], rat(-1, 4));
        assert!(CharPoly::parse("1,abc").is_err());
        assert!(CharPoly::parse("5").is_err()); // degree 0
        let e = CharPoly::parse("1, x, 2").unwrap_err();
        match e {
            PlieError::Parse(pe) => assert_eq!(pe.position, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn cubic_of_the_equation() {
        // r³ − 3r + 2 = (r−1)²(r+2)
        let p = CharPoly::parse("2,-3,0,1").unwrap();
        let roots = char_roots(&p).unwrap();
        assert_eq!(roots.multiplicity_of(&rat(1, 1)), 2);
        assert_eq!(roots.multiplicity_of(&rat(-2, 1)), 1);
        assert_eq!(roots.total_multiplicity(), 3);
    }

    #[test]
    fn inverse_recurrence_cubic() {
        // 2r³ − 3r² + 1 = (r−1)²(2r+1)
        let p = CharPoly::parse("1,0,-3,2").unwrap();
        let roots = char_roots(&p).unwrap();
        assert_eq!(roots.multiplicity_of(&rat(1, 1)), 2);
        assert_eq!(roots.multiplicity_of(&rat(-1, 2)), 1);
    }

    #[test]
    fn linear_monomial() {
        let p = CharPoly::parse("0,1").unwrap();
        let roots = char_roots(&p).unwrap();
        assert_eq!(roots.multiplicity_of(&BigRational::zero()), 1);
    }

    #[test]
    fn irrational_roots_go_numeric() {
        // r² − 2: no rational roots
        let p = CharPoly::parse("-2,0,1").unwrap();
        let roots = char_roots(&p).unwrap();
        let mut vals: Vec<f64> = roots.roots.iter().map(|(r, _)| r.approx_re()).collect();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] + 2f64.sqrt()).abs() < 1e-10);
        assert!((vals[1] - 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn complex_pair_detected() {
        // r² + 1
        let p = CharPoly::parse("1,0,1").unwrap();
        let roots = char_roots(&p).unwrap();
        assert_eq!(roots.roots.len(), 1);
        match &roots.roots[0] {
            (Root::ComplexPair { re, im }, 1) => {
                assert!(re.abs() < 1e-10);
                assert!((im - 1.0).abs() < 1e-10);
            }
            other => panic!("expected complex pair, got {other:?}"),
        }
        assert_eq!(roots.total_multiplicity(), 2);
    }

    #[test]
    fn leading_zeros_are_trimmed() {
        let p = CharPoly::parse("2,-3,0,1,0,0").unwrap();
        assert_eq!(p.degree(), 3);
    }
}

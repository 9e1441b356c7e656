//! The iterate-coefficient recurrence.
//!
//! Writing the (n+3)-rd iterate of a solution as a combination of g², g and
//! the identity,
//!
//! ```text
//! g^{n+3}(x) = aₙ·g²(x) + bₙ·g(x) + cₙ·x,
//! ```
//!
//! the integer triples (aₙ, bₙ, cₙ) start from (0, 3, −2) and satisfy
//!
//! ```text
//! a_{n+1} = bₙ,   b_{n+1} = 3aₙ + cₙ,   c_{n+1} = −2aₙ.
//! ```
//!
//! The triples grow like 2ⁿ, so everything here is exact big-integer
//! arithmetic; conversion to floating point happens only at evaluation
//! boundaries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact coefficient triple of the iterate expansion at index `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTriple {
    pub n: usize,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl CoeffTriple {
    /// Largest coefficient magnitude, as f64. Used to scale residual
    /// tolerances, since bₙ ~ 2ⁿ makes absolute tolerances meaningless.
    pub fn scale(&self) -> f64 {
        let m = self.a.abs().max(self.b.abs()).max(self.c.abs());
        big_to_f64(&m)
    }

    pub fn a_f64(&self) -> f64 {
        big_to_f64(&self.a)
    }

    pub fn b_f64(&self) -> f64 {
        big_to_f64(&self.b)
    }

    pub fn c_f64(&self) -> f64 {
        big_to_f64(&self.c)
    }
}

fn big_to_f64(v: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::INFINITY)
}

/// The exact triple (aₙ, bₙ, cₙ) after n recurrence steps from (0, 3, −2).
pub fn iterate_coeffs(n: usize) -> CoeffTriple {
    let (mut a, mut b, mut c) = (BigInt::zero(), BigInt::from(3), BigInt::from(-2));
    for _ in 0..n {
        let na = b.clone();
        let nb = &a * 3 + &c;
        let nc = &a * -2;
        a = na;
        b = nb;
        c = nc;
    }
    CoeffTriple { n, a, b, c }
}

/// Closed form bₙ = (1/9)·[(−2)ⁿ⁺⁴ + 3n + 11], computed exactly. The value
/// is always an integer; it is returned as a rational so the division by 9
/// stays visible and exactness is the caller's to check.
pub fn b_closed_form(n: usize) -> BigRational {
    let pow = BigInt::from(-2).pow(n as u32 + 4);
    BigRational::new(pow + BigInt::from(3 * n + 11), BigInt::from(9))
}

/// The geometric sum Σ_{k=0}^{n+3} (−2)ᵏ = (1 − (−2)ⁿ⁺⁴)/3, which equals
/// b_{n+1} − bₙ.
pub fn b_difference(n: usize) -> BigInt {
    let pow = BigInt::from(-2).pow(n as u32 + 4);
    (BigInt::one() - pow) / BigInt::from(3)
}

/// Companion-matrix stepper for the coefficients of g^{n+N} in the basis
/// {g^{N−1}, …, g, id}, for any relation g^N = Σ_{k<N} rel[k]·gᵏ. The
/// recurrence above is its N = 3 specialization with rel = (−2, 3, 0) read
/// as (id, g, g²).
#[derive(Debug, Clone)]
pub struct CoeffStepper {
    /// rel[k] multiplies gᵏ in the reduction of g^N.
    rel: Vec<BigRational>,
    /// state[k] multiplies gᵏ in the expansion of the current iterate.
    state: Vec<BigRational>,
}

impl CoeffStepper {
    /// `relation` lists ascending coefficients of the reduction
    /// g^N = relation[0]·id + relation[1]·g + … + relation[N−1]·g^{N−1}.
    /// The initial state is that of g^N itself.
    pub fn new(relation: Vec<BigRational>) -> Self {
        let state = relation.clone();
        CoeffStepper {
            rel: relation,
            state,
        }
    }

    /// Stepper for the equation g³ = 3g − 2·id.
    pub fn for_cubic() -> Self {
        Self::new(vec![
            BigRational::from_integer(BigInt::from(-2)),
            BigRational::from_integer(BigInt::from(3)),
            BigRational::zero(),
        ])
    }

    /// Ascending coefficients (on id, g, …, g^{N−1}) of the current iterate.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.state
    }

    /// Advance by one composition with g: each basis power shifts up, and
    /// the overflowing g^N reduces through the relation.
    pub fn advance(&mut self) {
        let n = self.state.len();
        let top = self.state[n - 1].clone();
        for k in (1..n).rev() {
            self.state[k] = &self.state[k - 1] + &top * &self.rel[k];
        }
        self.state[0] = &top * &self.rel[0];
    }
}

//! The decreasing branch: orbits of the inverse map G of g(x) = −2x + c
//! satisfy x_{n+3} = (3/2)x_{n+2} − (1/2)xₙ, fit xₙ = A·n + B + C·(−1/2)ⁿ
//! with A forced to 0 by anti-monotonicity, and collapse to the Babbage-type
//! identity 2x − g(x) − g²(x) = 0.
//!
//! ```bash
//! cargo run --example inverse_orbit_fit
//! ```

use plie::algebra::{anti_monotone_check, fit_abc, inverse_recurrence_step};
use plie::classify::{babbage_residual, inverse_equation_residual};
use plie::domain::{Interval, SelfMap};

fn main() {
    let full = Interval::full_line();
    let c = 1.0;
    let g = SelfMap::affine(-2.0, c, full); // the solution
    let inverse = SelfMap::affine(-0.5, c / 2.0, full); // G = g⁻¹

    // G satisfies its own iterative equation
    println!("inverse-equation residual G³(x) − (3/2)G²(x) + x/2 at sample points:");
    for x in [-3.0, 0.0, 1.0, 7.5] {
        println!("  x = {x:>4}: {:.3e}", inverse_equation_residual(&inverse, x).unwrap());
    }

    // orbit, recurrence, and closed-form fit
    let orbit = inverse.orbit(1.0, 10).unwrap();
    println!("\norbit of G from 1: {:?}", &orbit.values[..6]);
    let fit = fit_abc(orbit.values[0], orbit.values[1], orbit.values[2]);
    println!("fit x_n = A·n + B + C·(−1/2)^n: A = {:.3e}, B = {}, C = {}", fit.a, fit.b, fit.c);
    for n in 0..6 {
        let direct = orbit.values[n + 3];
        let stepped =
            inverse_recurrence_step(orbit.values[n], orbit.values[n + 1], orbit.values[n + 2]);
        let extrapolated = fit.extrapolate(n + 3);
        println!(
            "  n = {n}: orbit {direct:.8}, recurrence {stepped:.8}, fit {extrapolated:.8}"
        );
    }

    let am = anti_monotone_check(&orbit).unwrap();
    println!("anti-monotone: {} (violation: {:?})", am.holds, am.first_violation);

    // the Babbage-type identity pins the decreasing family
    println!("\nBabbage residual 2x − g(x) − g²(x) for g = −2x + {c}:");
    for x in [-2.0, 0.3, 4.0] {
        println!("  x = {x:>4}: {:.3e}", babbage_residual(&g, x).unwrap());
    }
}

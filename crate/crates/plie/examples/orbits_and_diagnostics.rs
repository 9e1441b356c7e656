//! Candidate maps, orbits, and the self-map / monotonicity diagnostics that
//! gate every verification.
//!
//! ```bash
//! cargo run --example orbits_and_diagnostics
//! ```

use plie::domain::{Interval, SelfMap};
use plie::expr::parse;

fn main() {
    let unit = Interval::closed(0.0, 1.0);
    let half = Interval::new(0.0, f64::INFINITY, true, false).unwrap();

    // orbit of the contraction G(x) = (1 − x)/2 towards its fixed point 1/3
    let g = SelfMap::affine(-0.5, 0.5, unit);
    let orbit = g.orbit(1.0, 8).expect("orbit stays inside [0,1]");
    println!("orbit of (1 - x)/2 from 1:");
    println!("  {:?}", orbit.values);

    // iterating a translation on the upper half-line
    let t = SelfMap::affine(1.0, 2.0, half);
    println!("\nx + 2 on [0,inf): g^5(0) = {}", t.iterate(5, 0.0).unwrap());

    // a map that drifts out of its domain is caught with a witness
    let drift = SelfMap::affine(1.0, 0.1, unit);
    let report = drift.check_self_map(101).unwrap();
    println!(
        "\nx + 0.1 on [0,1]: self-map = {}, witness = {:?}",
        report.is_self_map, report.witness
    );
    match drift.iterate(3, 0.85) {
        Err(e) => println!("  iterating from 0.85 fails: {e}"),
        Ok(v) => println!("  unexpected success: {v}"),
    }

    // monotonicity diagnosis over a grid, with a witness triple on failure
    let parabola = SelfMap::from_expr(parse("x*x").unwrap(), Interval::open(-1.0, 1.0));
    println!(
        "\nx*x on (-1,1): {:?}",
        parabola.monotonicity_diagnosis(21).unwrap()
    );
    let dec = SelfMap::affine(-2.0, 0.0, Interval::full_line());
    println!("-2x on R:      {:?}", dec.monotonicity_diagnosis(21).unwrap());
}

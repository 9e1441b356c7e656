//! The multiplicative side: f³(x) = f(x)³/x² on subintervals of (0, ∞),
//! conjugated to the additive equation by g = log ∘ f ∘ exp.
//!
//! ```bash
//! cargo run --example boros_roundtrip
//! ```

use plie::boros::{
    conjugate_to_additive, conjugate_to_multiplicative, enumerate_boros_families, verify_boros,
};
use plie::domain::{Interval, SelfMap};

fn main() {
    // the four family cases
    for literal in ["[1,2]", "(0,1]", "[1,inf)", "(0,inf)"] {
        let j = Interval::parse(literal).unwrap();
        println!("solutions of f³(x) = f(x)³/x² on {literal}:");
        for spec in enumerate_boros_families(&j).unwrap() {
            match spec.parameter_range {
                Some(range) => println!("  {} with parameter in {range}", spec.name),
                None => println!("  {}", spec.name),
            }
        }
    }

    // conjugation carries closed forms to closed forms
    let positives = Interval::new(0.0, f64::INFINITY, false, false).unwrap();
    let f = SelfMap::power_law(2.0, -2.0, positives).unwrap(); // 2/x²
    let g = conjugate_to_additive(&f).unwrap();
    println!("\nconjugating 2/x^2 on (0,inf): g(x) = {} on {}", g.describe(), g.domain());
    let back = conjugate_to_multiplicative(&g).unwrap();
    println!("and back:                     f(x) = {} on {}", back.describe(), back.domain());

    // verification on log-spaced grids (scale-safe residual)
    let window = ((-5.0f64).exp(), 5.0f64.exp());
    for (label, f) in [
        ("x", SelfMap::power_law(1.0, 1.0, positives).unwrap()),
        ("2/x^2", SelfMap::power_law(2.0, -2.0, positives).unwrap()),
        ("0.5*x", SelfMap::power_law(0.5, 1.0, Interval::open(0.0, 1.0)).unwrap()),
    ] {
        let window = if *f.domain() == positives {
            Some(window)
        } else {
            Some((1e-2, 1.0 - 1e-9))
        };
        let report = verify_boros(&f, 1001, window).unwrap();
        println!("verify {label:<8} residual sup = {:.3e}", report.residual_sup);
    }

    // the residual is evaluated through the conjugate at extreme magnitudes
    let f = SelfMap::power_law(2.0, -2.0, positives).unwrap();
    let r = plie::boros::boros_residual(&f, 1e-200).unwrap();
    println!("\nresidual of 2/x^2 at x = 1e-200 (log-space path): {r:.3e}");
}

//! Nearest-family classification: fit the best translation and affine
//! parameters and report the sup-distance to the closest family member.
//!
//! ```bash
//! cargo run --example classify_candidate
//! ```

use plie::classify::classify_candidate;
use plie::domain::{Interval, SelfMap};

fn main() {
    // an exact translation classifies to itself with distance 0
    let half = Interval::new(0.0, f64::INFINITY, true, false).unwrap();
    let t = SelfMap::affine(1.0, 2.0, half);
    let report = classify_candidate(&t, 501, Some((0.0, 50.0))).unwrap();
    println!(
        "x+2 on [0,inf): nearest {:?}, distance {:.3e}",
        report.nearest_family.unwrap().kind,
        report.distance_sup.unwrap()
    );

    // a noisy grid map near the identity on [0,1]
    let dom = Interval::closed(0.0, 1.0);
    let knots: Vec<f64> = (0..=64).map(|k| k as f64 / 64.0).collect();
    let values: Vec<f64> = knots
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let noise = if k % 2 == 0 { 1e-4 } else { -1e-4 };
            (x + noise).clamp(0.0, 1.0)
        })
        .collect();
    let noisy = SelfMap::grid_map(knots, values, dom).unwrap();
    let report = classify_candidate(&noisy, 501, None).unwrap();
    println!(
        "identity ± 1e-4 noise on [0,1]: nearest {:?}, distance {:.3e}, residual sup {:.3e}",
        report.nearest_family.unwrap().kind,
        report.distance_sup.unwrap(),
        report.residual_sup,
    );

    // a decreasing solution on the full line
    let a = SelfMap::affine(-2.0, 0.0, Interval::full_line());
    let report = classify_candidate(&a, 501, Some((-5.0, 5.0))).unwrap();
    println!(
        "-2x on R (window [-5,5]): nearest {:?}, distance {:.3e}",
        report.nearest_family.unwrap().kind,
        report.distance_sup.unwrap()
    );
}

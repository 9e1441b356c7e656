//! Repeated seeded searches supporting the classification empirically: on
//! [0,1] increasing searches land on the identity, decreasing searches never
//! get near a solution, and on an ℝ-window decreasing searches discover the
//! −2x + c family.
//!
//! ```bash
//! cargo run --release --example falsification
//! ```

use plie::domain::Interval;
use plie::solver::{falsification_suite, solve, SolverConfig};

fn main() {
    let unit = Interval::closed(0.0, 1.0);

    let up = falsification_suite(&unit, None, 20, 7, true).expect("suite runs");
    println!("increasing search on [0,1], 20 seeded runs:");
    println!("  success rate:   {}", up.success_rate);
    println!("  worst residual: {:.3e}", up.worst_residual);
    println!("  worst distance: {:.3e}", up.worst_distance);

    let down = falsification_suite(&unit, None, 20, 7, false).expect("suite runs");
    println!("\ndecreasing search on [0,1], 20 seeded runs:");
    println!("  success rate:   {}", down.success_rate);
    println!("  min residual:   {:.4} (bounded away from 0)", down.min_residual);
    println!("  flags:          {:?}", down.flags);

    // on a window standing in for ℝ, decreasing searches can succeed: the
    // −2x + c family lives there
    println!("\ndecreasing search on R (window [-5,5]), 5 seeded runs:");
    for seed in 1..=5 {
        let config = SolverConfig {
            seed,
            monotone: false,
            ..SolverConfig::default()
        };
        let report = solve(&config, &Interval::full_line(), Some((-5.0, 5.0)), None).unwrap();
        let family = report
            .nearest_family
            .as_ref()
            .map(|f| format!("{:?}", f.kind))
            .unwrap_or_else(|| "none".into());
        println!(
            "  seed {seed}: residual {:.3e}, nearest {family}, clamped knots {}",
            report.final_residual, report.clamped_knots
        );
    }
}

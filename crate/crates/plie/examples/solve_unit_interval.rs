//! Residual minimisation over monotone piecewise-linear self-maps of [0,1].
//!
//! On a bounded interval the only solution is the identity; a seeded local
//! search from a noisy initialisation finds it to high accuracy.
//!
//! ```bash
//! cargo run --release --example solve_unit_interval
//! ```

use plie::domain::Interval;
use plie::solver::{objective, solve, MonotoneGridMap, SolverConfig};

fn main() {
    let unit = Interval::closed(0.0, 1.0);
    let config = SolverConfig {
        seed: 42,
        ..SolverConfig::default()
    };
    let report = solve(&config, &unit, None, None).expect("solver runs");
    println!("increasing search on [0,1], seed {}:", config.seed);
    println!("  final residual (mean squared): {:.3e}", report.final_residual);
    println!("  iterations:                    {}", report.iterations_used);
    println!("  converged:                     {}", report.converged);
    if let Some(family) = &report.nearest_family {
        println!(
            "  nearest family:                {:?} at sup-distance {:.3e}",
            family.kind,
            report.distance_sup.unwrap()
        );
    }
    let trace = &report.trace;
    println!("  objective first/last:          {:.3e} → {:.3e}", trace[0], trace[trace.len() - 1]);

    // starting from the exact identity there is nothing to do
    let id_map = plie::domain::SelfMap::identity(unit);
    let init = MonotoneGridMap::from_samples(&id_map, (0.0, 1.0), config.grid_size, true).unwrap();
    println!("\nobjective at the sampled identity: {:.3e}", objective(&init));
    let report = solve(&config, &unit, None, Some(init)).unwrap();
    println!("solve from it: {} iterations, converged = {}", report.iterations_used, report.converged);

    // decreasing search stalls at a residual floor: no decreasing solutions
    let config = SolverConfig {
        seed: 42,
        monotone: false,
        ..SolverConfig::default()
    };
    let report = solve(&config, &unit, None, None).unwrap();
    println!(
        "\ndecreasing search on [0,1]: final residual {:.4} after {} iterations, flags {:?}",
        report.final_residual, report.iterations_used, report.flags
    );
}

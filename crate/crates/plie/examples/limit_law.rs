//! Convergence of g^{n+3}(x)/bₙ to −g²(x)/2 + g(x) − x/2 for solutions.
//!
//! The ratio aₙ/bₙ and cₙ/bₙ both tend to −1/2, so dividing the iterate
//! expansion by bₙ pins a limit functional every solution must satisfy.
//! The approach is slow — the gap decays like n·2⁻ⁿ — which the table
//! below makes visible.
//!
//! ```bash
//! cargo run --example limit_law
//! ```

use plie::algebra::limit_functional;
use plie::domain::{Interval, SelfMap};

fn main() {
    let full = Interval::full_line();
    let maps = [
        ("x (identity)", SelfMap::identity(full)),
        ("x + 1", SelfMap::affine(1.0, 1.0, full)),
        ("-2x + 1", SelfMap::affine(-2.0, 1.0, full)),
    ];
    let x = 1.0;
    println!("gap |g^(n+3)(x)/b_n - rhs| at x = {x}:");
    print!("{:>4}", "n");
    for (name, _) in &maps {
        print!(" {name:>16}");
    }
    println!();
    for n in [0, 5, 10, 15, 20, 25, 30] {
        print!("{n:>4}");
        for (_, map) in &maps {
            let report = limit_functional(map, x, n).unwrap();
            let gap = (report.lhs_sequence[n] - report.rhs).abs();
            print!(" {gap:>16.3e}");
        }
        println!();
    }

    println!("\nlimit values (−g²(x)/2 + g(x) − x/2) at x = 1:");
    for (name, map) in &maps {
        let report = limit_functional(map, x, 0).unwrap();
        println!("  {name:<14} rhs = {}", report.rhs);
    }
}

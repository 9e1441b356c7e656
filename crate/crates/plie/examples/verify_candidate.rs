//! Grid verification of candidates against g³(x) = 3g(x) − 2x, and the
//! complete family set of each interval kind.
//!
//! ```bash
//! cargo run --example verify_candidate
//! ```

use plie::classify::{enumerate_families, verify_solution};
use plie::domain::{Interval, SelfMap};

fn main() {
    // the families, by interval kind
    for literal in ["[0,1]", "[0,inf)", "(-inf,0]", "R"] {
        let domain = Interval::parse(literal).unwrap();
        println!("solutions on {literal}:");
        for spec in enumerate_families(&domain) {
            match spec.parameter_range {
                Some(range) => println!("  {} with parameter in {range}", spec.name),
                None => println!("  {}", spec.name),
            }
        }
    }

    // exact members verify to rounding error
    println!("\nresidual sup |g³(x) − 3g(x) + 2x| on 1001-point grids:");
    let id = SelfMap::identity(Interval::open(0.0, 1.0));
    let r = verify_solution(&id, 1001, None).unwrap();
    println!("  x on (0,1):          {:.3e}", r.residual_sup);

    let t = SelfMap::affine(1.0, 2.0, Interval::new(0.0, f64::INFINITY, true, false).unwrap());
    let r = verify_solution(&t, 1001, Some((0.0, 50.0))).unwrap();
    println!("  x+2 on [0,inf):      {:.3e}", r.residual_sup);

    let a = SelfMap::affine(-2.0, 1.0, Interval::full_line());
    let r = verify_solution(&a, 1001, Some((-5.0, 5.0))).unwrap();
    println!("  -2x+1 on R:          {:.3e}", r.residual_sup);

    // non-members fail loudly: x + 0.1 is not even a self-map of [0,1]
    let bad = SelfMap::affine(1.0, 0.1, Interval::closed(0.0, 1.0));
    match verify_solution(&bad, 1001, None) {
        Err(e) => println!("\nx+0.1 on [0,1] rejected: {e}"),
        Ok(r) => println!("\nunexpected pass: {:?}", r.residual_sup),
    }

    // and a monotone self-map that simply isn't a solution
    let wrong = SelfMap::affine(0.5, 0.25, Interval::closed(0.0, 1.0));
    let r = verify_solution(&wrong, 1001, None).unwrap();
    println!("x/2+1/4 on [0,1] residual sup: {:.3}", r.residual_sup);
}

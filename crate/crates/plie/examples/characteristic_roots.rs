//! Characteristic polynomials of the equation and of its inverse-orbit
//! recurrence, factored exactly.
//!
//! ```bash
//! cargo run --example characteristic_roots
//! ```

use plie::algebra::{char_roots, CharPoly};

fn show(label: &str, coeffs: &str) {
    let poly = CharPoly::parse(coeffs).expect("valid coefficient list");
    let roots = char_roots(&poly).expect("roots found");
    println!("{label}");
    println!("  ascending coefficients: {coeffs}");
    for (root, multiplicity) in &roots.roots {
        println!("  root {root} with multiplicity {multiplicity}");
    }
    println!();
}

fn main() {
    // substituting g(x) = r·x into g³(x) = 3g(x) − 2x gives r³ − 3r + 2 = 0,
    // which factors as (r − 1)²(r + 2)
    show("r^3 - 3r + 2 (the equation's linear candidates)", "2,-3,0,1");

    // orbits of the inverse of a decreasing solution satisfy
    // x_{n+3} = (3/2)x_{n+2} − (1/2)x_n, i.e. 2r³ − 3r² + 1 = 0,
    // which factors as (r − 1)²(2r + 1) and yields the basis {n, 1, (−1/2)ⁿ}
    show("2r^3 - 3r^2 + 1 (the inverse-orbit recurrence)", "1,0,-3,2");

    // the root finder falls back to numerics for irrational factors
    show("r^2 - 2 (no rational roots)", "-2,0,1");
}

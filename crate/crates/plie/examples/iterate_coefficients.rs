//! The exact coefficient triples (aₙ, bₙ, cₙ) of the iterate expansion
//!
//!   g^{n+3}(x) = aₙ·g²(x) + bₙ·g(x) + cₙ·x,
//!
//! their closed form bₙ = ((−2)^{n+4} + 3n + 11)/9, and the geometric
//! difference law b_{n+1} − bₙ = Σ_{k≤n+3} (−2)ᵏ.
//!
//! ```bash
//! cargo run --example iterate_coefficients
//! ```

use plie::algebra::{b_closed_form, b_difference, iterate_coeffs};

fn main() {
    println!("{:>3} {:>12} {:>12} {:>12}   a+b+c  closed-form b", "n", "a", "b", "c");
    for n in 0..=12 {
        let t = iterate_coeffs(n);
        let sum = &t.a + &t.b + &t.c;
        let cf = b_closed_form(n);
        println!(
            "{n:>3} {:>12} {:>12} {:>12}   {sum:>5}  {:>12}",
            t.a,
            t.b,
            t.c,
            cf.to_integer(),
        );
    }

    println!("\ndifferences b_(n+1) - b_n against the geometric sum:");
    for n in 0..=6 {
        let lhs = iterate_coeffs(n + 1).b - iterate_coeffs(n).b;
        let rhs = b_difference(n);
        println!("  n = {n}: {lhs} = {rhs}");
        assert_eq!(lhs, rhs);
    }

    // the triples grow like 2^n, which is why everything is big-integer
    let big = iterate_coeffs(100);
    println!("\nb_100 = {}", big.b);
}

//! The expression grammar behind every CLI flag that accepts a function:
//! parsing, canonical printing, evaluation, family detection, and exact
//! error positions.
//!
//! ```bash
//! cargo run --example parse_expressions
//! ```

use plie::expr::{detect_family, parse};

fn main() {
    // parse, print canonically, evaluate
    for text in ["-2*x+3", "2/x^2", "exp(log(x))", "sqrt(abs(x - 0.5))", "x^-2"] {
        let ast = parse(text).expect("well-formed");
        let printed = ast.to_string();
        let value = ast.eval(2.0).expect("defined at 2");
        println!("{text:<20} → {printed:<20} value at 2: {value}");
    }

    // closed-form family shapes are recognised syntactically
    println!("\nfamily detection:");
    for text in ["x", "x + 2", "1 - 2*x", "0.5*x", "3/x^2", "x + exp(x)"] {
        let ast = parse(text).unwrap();
        println!("  {text:<12} → {:?}", detect_family(&ast));
    }

    // parse errors carry 1-based character positions
    println!("\nmalformed inputs:");
    for text in ["2x", "2/x^", "log x", "x + @"] {
        match parse(text) {
            Err(e) => println!("  {text:<8} → position {}: expected {}, found {}", e.position, e.expected, e.found),
            Ok(_) => println!("  {text:<8} → unexpectedly parsed"),
        }
    }

    // precedence: ^ binds tighter than unary minus, and is right-associative
    println!("\nprecedence:");
    println!("  -x^2 at x=3  → {}", parse("-x^2").unwrap().eval(3.0).unwrap());
    println!("  2^3^2        → {}", parse("2^3^2").unwrap().eval(0.0).unwrap());
    println!("  2x           → {:?}", parse("2x").unwrap_err().to_string());
}

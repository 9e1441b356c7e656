//! The 50-expression evaluation corpus and 20 malformed inputs used by the
//! parser acceptance criterion. Each well-formed entry carries a closure
//! mirroring the expression's own operation order, so agreement is expected
//! at full precision.

use plie::expr::parse;

type Direct = fn(f64) -> f64;

pub const SAMPLE_POINTS: [f64; 11] = [
    -2.5, -1.25, -0.6, 0.1, 0.35, 0.8, 1.0, 1.5, 2.25, 3.0, 4.5,
];

pub fn corpus() -> Vec<(&'static str, Direct)> {
    vec![
        ("x", |x| x),
        ("-x", |x| -x),
        ("x + 1", |x| x + 1.0),
        ("x - 2.5", |x| x - 2.5),
        ("2*x", |x| 2.0 * x),
        ("x/2", |x| x / 2.0),
        ("-2*x + 3", |x| -2.0 * x + 3.0),
        ("x^2", |x| x.powf(2.0)),
        ("x^3 - x", |x| x.powf(3.0) - x),
        ("(x + 1)*(x - 1)", |x| (x + 1.0) * (x - 1.0)),
        ("x*x + 1", |x| x * x + 1.0),
        ("1/(x^2 + 1)", |x| 1.0 / (x.powf(2.0) + 1.0)),
        ("x/(x^2 + 4)", |x| x / (x.powf(2.0) + 4.0)),
        ("abs(x)", |x| x.abs()),
        ("sqrt(abs(x))", |x| x.abs().sqrt()),
        ("exp(x)", |x| x.exp()),
        ("exp(-x^2)", |x| (-(x.powf(2.0))).exp()),
        ("log(x^2 + 1)", |x| (x.powf(2.0) + 1.0).ln()),
        ("log(abs(x) + 2)", |x| (x.abs() + 2.0).ln()),
        ("sqrt(x^2 + 1)", |x| (x.powf(2.0) + 1.0).sqrt()),
        ("2^x", |x| 2.0f64.powf(x)),
        ("abs(x)^0.5", |x| x.abs().powf(0.5)),
        ("(1 + x^2)^(-1)", |x| (1.0 + x.powf(2.0)).powf(-1.0)),
        ("x - x^3/6", |x| x - x.powf(3.0) / 6.0),
        ("1 + x + x^2/2", |x| 1.0 + x + x.powf(2.0) / 2.0),
        ("-(x + 1)", |x| -(x + 1.0)),
        ("--x", |x| -(-x)),
        ("3 - -x", |x| 3.0 - (-x)),
        ("2*x*x*2", |x| 2.0 * x * x * 2.0),
        ("x/2/2", |x| x / 2.0 / 2.0),
        ("1 - 2 - 3 + x", |x| 1.0 - 2.0 - 3.0 + x),
        ("1e2*x", |x| 1e2 * x),
        ("2.5e-1 + x", |x| 2.5e-1 + x),
        (".5*x", |x| 0.5 * x),
        ("abs(x - 1) + abs(x + 1)", |x| (x - 1.0).abs() + (x + 1.0).abs()),
        ("exp(log(abs(x) + 1))", |x| (x.abs() + 1.0).ln().exp()),
        ("sqrt(sqrt(abs(x) + 1))", |x| (x.abs() + 1.0).sqrt().sqrt()),
        ("x^2^2", |x| x.powf(2.0f64.powf(2.0))),
        ("(x/3)^2", |x| (x / 3.0).powf(2.0)),
        ("2/(abs(x) + 1)^2", |x| 2.0 / (x.abs() + 1.0).powf(2.0)),
        ("x + x/7 + x/49", |x| x + x / 7.0 + x / 49.0),
        ("(2*x - 1)/(x^2 + 2)", |x| (2.0 * x - 1.0) / (x.powf(2.0) + 2.0)),
        ("abs(x)^3/9", |x| x.abs().powf(3.0) / 9.0),
        ("exp(x/10) - 1", |x| (x / 10.0).exp() - 1.0),
        ("log(exp(x/4))", |x| (x / 4.0).exp().ln()),
        ("1/2*x", |x| 1.0 / 2.0 * x),
        ("0*x + 3.25", |x| 0.0 * x + 3.25),
        ("x*1e-3 + 2E2", |x| x * 1e-3 + 2e2),
        ("sqrt(abs(2*x - 3)) + x^2", |x| {
            (2.0 * x - 3.0).abs().sqrt() + x.powf(2.0)
        }),
        ("(x + 2)^2 - (x - 2)^2", |x| {
            (x + 2.0).powf(2.0) - (x - 2.0).powf(2.0)
        }),
    ]
}

/// Malformed inputs with the expected 1-based error position.
pub fn malformed() -> Vec<(&'static str, usize)> {
    vec![
        ("", 1),
        ("2x", 2),
        ("2/x^", 5),
        ("(x+1", 5),
        ("x+", 3),
        ("*x", 1),
        ("sin(x)", 1),
        ("x++1", 3),
        ("log x", 5),
        ("x + @", 5),
        ("1.2.3", 4),
        ("2**x", 3),
        ("abs()", 5),
        (")", 1),
        ("x^", 3),
        ("exp(x", 6),
        ("x 2", 3),
        ("1e", 2),
        ("sqrt(-)", 7),
        ("((x)", 5),
    ]
}

pub fn run() -> Result<String, String> {
    let corpus = corpus();
    if corpus.len() != 50 {
        return Err(format!("corpus has {} entries, wanted 50", corpus.len()));
    }
    for (text, direct) in &corpus {
        let ast = parse(text).map_err(|e| format!("{text:?} failed to parse: {e}"))?;
        // print/parse fixpoint
        let printed = ast.to_string();
        let reparsed =
            parse(&printed).map_err(|e| format!("{text:?} printed as {printed:?}: {e}"))?;
        if reparsed != ast {
            return Err(format!("{text:?} re-parses differently via {printed:?}"));
        }
        if reparsed.to_string() != printed {
            return Err(format!("printing of {text:?} is not a fixpoint"));
        }
        for &x in &SAMPLE_POINTS {
            let got = ast
                .eval(x)
                .map_err(|e| format!("{text:?} failed to evaluate at {x}: {e}"))?;
            let want = direct(x);
            let gap = (got - want).abs();
            if gap > 1e-15 * want.abs().max(1.0) {
                return Err(format!(
                    "{text:?} at x = {x}: parsed {got} vs direct {want} (gap {gap:e})"
                ));
            }
        }
    }
    let malformed = malformed();
    if malformed.len() != 20 {
        return Err(format!("{} malformed entries, wanted 20", malformed.len()));
    }
    for (text, position) in &malformed {
        match parse(text) {
            Ok(ast) => return Err(format!("{text:?} unexpectedly parsed as {ast}")),
            Err(e) => {
                if e.position != *position {
                    return Err(format!(
                        "{text:?}: error at position {} (expected {position}): {e}",
                        e.position
                    ));
                }
            }
        }
    }
    Ok("50 expressions round-trip and evaluate within 1e-15 relative at 11 points; \
        20 malformed inputs report exact positions"
        .into())
}

//! Command-line front door.
//!
//! Every subcommand emits one JSON document on stdout (CSV for tabular
//! documents with `--format csv`); errors go to stderr as structured JSON.
//! Exit codes: 0 success, 1 verification failure above tolerance, 2 usage
//! or parse errors.
//!
//! Outputs are byte-identical for identical argv and seed; pass
//! `--no-timestamp` to drop the one non-deterministic field.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{ArgAction, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{b_closed_form, char_roots, iterate_coeffs, CharPoly, Root};
use crate::boros::{conjugate_to_additive, conjugate_to_multiplicative, verify_boros};
use crate::classify::{classify_candidate, verify_solution, ClassificationReport};
use crate::domain::{Interval, Monotonicity, SelfMap};
use crate::error::PlieError;
use crate::expr::{detect_family, parse as parse_expr, DetectedFamily};
use crate::solver::{falsification_suite, solve, SolverConfig};

#[derive(Parser, Debug)]
#[command(
    name = "plie",
    no_binary_name = true,
    disable_help_subcommand = true,
    about = "Solutions of g^3(x) = 3g(x) - 2x and of the Boros equation f^3(x) = f(x)^3/x^2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots (with multiplicities) of a characteristic polynomial.
    Roots {
        /// Ascending coefficients, e.g. "2,-3,0,1" for r^3 - 3r + 2.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, action = ArgAction::SetTrue)]
        no_timestamp: bool,
    },
    /// Iterate-expansion coefficient table (a_n, b_n, c_n).
    Coeffs {
        /// Largest index n to tabulate.
        #[arg(long)]
        n: usize,
        /// Add the closed form of b_n and a per-row comparison.
        #[arg(long, action = ArgAction::SetTrue)]
        closed_form: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, action = ArgAction::SetTrue)]
        no_timestamp: bool,
    },
    /// Orbit (x, g(x), ..., g^n(x)) of a candidate map.
    Iterate {
        /// Candidate map as an expression in x.
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        /// Domain interval literal, e.g. "[0,1]", "(0,inf)", "R".
        #[arg(long)]
        interval: String,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, action = ArgAction::SetTrue)]
        no_timestamp: bool,
    },
    /// Verify a candidate against g^3(x) = 3g(x) - 2x on a grid.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        interval: String,
        #[arg(long, default_value = "1001")]
        grid: usize,
        /// Residual tolerance deciding the exit code.
        #[arg(long, default_value = "1e-9")]
        tol: f64,
        /// Finite window "a,b" (required for unbounded intervals).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, action = ArgAction::SetTrue)]
        no_timestamp: bool,
    },
    /// Verify a candidate against f^3(x) = f(x)^3/x^2 on a log grid.
    VerifyBoros {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        interval: String,
        #[arg(long, default_value = "1001")]
        grid: usize,
        #[arg(long, default_value = "1e-10")]
        tol: f64,
        /// Positive window "a,b" in x-space (required when the interval
        /// touches 0 or infinity).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, action = ArgAction::SetTrue)]
        no_timestamp: bool,
    },
    /// Verify and fit the nearest closed-form family.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        interval: String,
        #[arg(long, default_value = "1001")]
        grid: usize,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, action = ArgAction::SetTrue)]
        no_timestamp: bool,
    },
    /// Minimise the equation residual over monotone grid maps.
    Solve {
        #[arg(long)]
        interval: String,
        #[arg(long, default_value = "65")]
        grid: usize,
        #[arg(long, default_value = "42")]
        seed: u64,
        /// Search decreasing maps instead of increasing ones.
        #[arg(long, action = ArgAction::SetTrue)]
        decreasing: bool,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, default_value = "20000")]
        max_iterations: usize,
        #[arg(long, default_value = "1e-2")]
        step: f64,
        #[arg(long, default_value = "1e-10")]
        tolerance: f64,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<String>,
        /// csv prints the objective trace (iteration, objective).
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, action = ArgAction::SetTrue)]
        no_timestamp: bool,
    },
    /// Repeated seeded solves; reports the success rate against the
    /// domain's family set.
    Falsify {
        #[arg(long)]
        interval: String,
        #[arg(long, default_value = "100")]
        runs: usize,
        #[arg(long, default_value = "7")]
        seed: u64,
        #[arg(long, action = ArgAction::SetTrue)]
        decreasing: bool,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, action = ArgAction::SetTrue)]
        no_timestamp: bool,
    },
    /// Conjugate a candidate between the multiplicative and additive
    /// equations (g = log ∘ f ∘ exp, f = exp ∘ g ∘ log).
    Conjugate {
        /// Multiplicative candidate; conjugated to the additive side.
        #[arg(long, conflicts_with = "g", allow_hyphen_values = true)]
        f: Option<String>,
        /// Additive candidate; conjugated to the multiplicative side.
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        /// Domain (defaults: "(0,inf)" for --f, "R" for --g).
        #[arg(long)]
        interval: Option<String>,
        #[arg(long, action = ArgAction::SetTrue)]
        no_timestamp: bool,
    },
}

/// Run the CLI on `argv` (without the binary name), writing documents to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run(argv: &[&str], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // help/version requests are not usage errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let doc = json!({
                "error": "usage",
                "message": e.to_string(),
            });
            let _ = writeln!(err, "{doc}");
            return 2;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", error_document(&e));
            match e {
                PlieError::Parse(_) | PlieError::Config(_) | PlieError::Domain(_) => 2,
                PlieError::Escape { .. } | PlieError::Eval { .. } | PlieError::Numeric(_) => 1,
            }
        }
    }
}

/// Entry point for the binary: real argv, stdout, stderr.
pub fn run_from_env() -> i32 {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run(&argv, &mut out, &mut err)
}

fn error_document(e: &PlieError) -> serde_json::Value {
    let mut doc = json!({
        "error": e.kind(),
        "message": e.to_string(),
    });
    match e {
        PlieError::Parse(pe) => {
            doc["position"] = json!(pe.position);
            doc["expected"] = json!(pe.expected);
            doc["found"] = json!(pe.found);
        }
        PlieError::Escape { start, step, value } => {
            doc["witness"] = json!(start);
            doc["step"] = json!(step);
            doc["value"] = json!(value);
        }
        PlieError::Eval { x, .. } => {
            doc["x"] = json!(x);
        }
        _ => {}
    }
    doc
}

fn timestamp_field(no_timestamp: bool) -> Option<u64> {
    if no_timestamp {
        None
    } else {
        Some(
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        )
    }
}

fn parse_window(window: &Option<String>) -> Result<Option<(f64, f64)>, PlieError> {
    let Some(text) = window else {
        return Ok(None);
    };
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(PlieError::Config(format!(
            "window must be \"a,b\", got \"{text}\""
        )));
    }
    let a: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| PlieError::Config(format!("bad window endpoint \"{}\"", parts[0])))?;
    let b: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| PlieError::Config(format!("bad window endpoint \"{}\"", parts[1])))?;
    Ok(Some((a, b)))
}

/// Build a self-map from expression text, using the exact closed form when
/// the expression has one (affine or power-law shape).
fn map_from_expr(text: &str, domain: Interval) -> Result<SelfMap, PlieError> {
    let ast = parse_expr(text).map_err(PlieError::Parse)?;
    if let Some((a, b)) = crate::expr::as_affine(&ast) {
        return Ok(SelfMap::affine(a, b, domain));
    }
    if let Some((c, p)) = crate::expr::as_power(&ast) {
        if c > 0.0 && domain.lo() >= 0.0 {
            return SelfMap::power_law(c, p, domain);
        }
    }
    Ok(SelfMap::from_expr(ast, domain))
}

fn monotonicity_name(m: &Monotonicity) -> &'static str {
    match m {
        Monotonicity::StrictlyIncreasing => "strictly_increasing",
        Monotonicity::StrictlyDecreasing => "strictly_decreasing",
        Monotonicity::NonMonotone { .. } => "non_monotone",
    }
}

#[derive(Serialize)]
struct VerifyDoc {
    command: &'static str,
    candidate: String,
    domain: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    window_lo: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    window_hi: Option<f64>,
    grid_size: usize,
    self_map_ok: bool,
    monotonicity: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    monotonicity_witness: Option<(f64, f64, f64)>,
    residual_sup: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nearest_family: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nearest_parameter: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance_sup: Option<f64>,
    clamped_samples: usize,
    flags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn verify_doc(
    command: &'static str,
    report: &ClassificationReport,
    tol: Option<f64>,
    no_timestamp: bool,
) -> VerifyDoc {
    let witness = match report.monotonicity {
        Monotonicity::NonMonotone { witness } => Some(witness),
        _ => None,
    };
    VerifyDoc {
        command,
        candidate: report.candidate.clone(),
        domain: report.domain.to_string(),
        window_lo: report.window.map(|w| w.0),
        window_hi: report.window.map(|w| w.1),
        grid_size: report.grid_size,
        self_map_ok: report.self_map_ok,
        monotonicity: monotonicity_name(&report.monotonicity),
        monotonicity_witness: witness,
        residual_sup: report.residual_sup,
        tolerance: tol,
        passed: tol.map(|t| report.residual_sup <= t),
        nearest_family: report.nearest_family.as_ref().map(|f| f.kind.name()),
        nearest_parameter: report.nearest_family.as_ref().and_then(|f| f.kind.parameter()),
        distance_sup: report.distance_sup,
        clamped_samples: report.clamped_samples,
        flags: report.flags.clone(),
        timestamp: timestamp_field(no_timestamp),
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, doc: &T) -> Result<(), PlieError> {
    let text = serde_json::to_string_pretty(doc)
        .map_err(|e| PlieError::Numeric(format!("serialization: {e}")))?;
    writeln!(out, "{text}").map_err(|e| PlieError::Numeric(format!("write: {e}")))?;
    Ok(())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, PlieError> {
    match command {
        Command::Roots {
            coeffs,
            format,
            no_timestamp,
        } => {
            let poly = CharPoly::parse(&coeffs)?;
            let roots = char_roots(&poly)?;
            if format == Format::Csv {
                writeln!(out, "type,value,approx_re,approx_im,multiplicity")
                    .map_err(|e| PlieError::Numeric(e.to_string()))?;
                for (root, m) in &roots.roots {
                    let (ty, value, re, im) = match root {
                        Root::Rational(q) => ("rational", q.to_string(), root.approx_re(), 0.0),
                        Root::Real(v) => ("real", v.to_string(), *v, 0.0),
                        Root::ComplexPair { re, im } => {
                            ("complex_pair", format!("{re}+/-{im}i"), *re, *im)
                        }
                    };
                    writeln!(out, "{ty},{value},{re},{im},{m}")
                        .map_err(|e| PlieError::Numeric(e.to_string()))?;
                }
                return Ok(0);
            }
            let rows: Vec<serde_json::Value> = roots
                .roots
                .iter()
                .map(|(root, m)| match root {
                    Root::Rational(q) => json!({
                        "type": "rational",
                        "value": q.to_string(),
                        "approx_re": root.approx_re(),
                        "multiplicity": m,
                    }),
                    Root::Real(v) => json!({
                        "type": "real",
                        "approx_re": v,
                        "multiplicity": m,
                    }),
                    Root::ComplexPair { re, im } => json!({
                        "type": "complex_pair",
                        "approx_re": re,
                        "approx_im": im,
                        "multiplicity": m,
                    }),
                })
                .collect();
            let doc = json!({
                "command": "roots",
                "coefficients": coeffs,
                "degree": poly.degree(),
                "roots": rows,
                "timestamp": timestamp_field(no_timestamp),
            });
            emit_json(out, &strip_null_timestamp(doc))?;
            Ok(0)
        }

        Command::Coeffs {
            n,
            closed_form,
            format,
            no_timestamp,
        } => {
            if format == Format::Csv {
                let header = if closed_form {
                    "n,a,b,c,b_closed_form,matches"
                } else {
                    "n,a,b,c"
                };
                writeln!(out, "{header}").map_err(|e| PlieError::Numeric(e.to_string()))?;
                for k in 0..=n {
                    let t = iterate_coeffs(k);
                    if closed_form {
                        let cf = b_closed_form(k);
                        let matches = cf.is_integer() && cf.to_integer() == t.b;
                        writeln!(out, "{k},{},{},{},{},{}", t.a, t.b, t.c, cf.to_integer(), matches)
                            .map_err(|e| PlieError::Numeric(e.to_string()))?;
                    } else {
                        writeln!(out, "{k},{},{},{}", t.a, t.b, t.c)
                            .map_err(|e| PlieError::Numeric(e.to_string()))?;
                    }
                }
                return Ok(0);
            }
            let rows: Vec<serde_json::Value> = (0..=n)
                .map(|k| {
                    let t = iterate_coeffs(k);
                    let mut row = json!({
                        "n": k,
                        "a": t.a.to_string(),
                        "b": t.b.to_string(),
                        "c": t.c.to_string(),
                    });
                    if closed_form {
                        let cf = b_closed_form(k);
                        row["b_closed_form"] = json!(cf.to_integer().to_string());
                        row["matches"] = json!(cf.is_integer() && cf.to_integer() == t.b);
                    }
                    row
                })
                .collect();
            let doc = json!({
                "command": "coeffs",
                "n_max": n,
                "closed_form": closed_form,
                "rows": rows,
                "timestamp": timestamp_field(no_timestamp),
            });
            emit_json(out, &strip_null_timestamp(doc))?;
            Ok(0)
        }

        Command::Iterate {
            g,
            interval,
            x,
            n,
            format,
            no_timestamp,
        } => {
            let domain = Interval::parse(&interval)?;
            let map = map_from_expr(&g, domain)?;
            let orbit = map.orbit(x, n)?;
            if format == Format::Csv {
                writeln!(out, "k,value").map_err(|e| PlieError::Numeric(e.to_string()))?;
                for (k, v) in orbit.values.iter().enumerate() {
                    writeln!(out, "{k},{v}").map_err(|e| PlieError::Numeric(e.to_string()))?;
                }
                return Ok(0);
            }
            let doc = json!({
                "command": "iterate",
                "candidate": map.describe(),
                "domain": domain.to_string(),
                "start": orbit.start,
                "values": orbit.values,
                "timestamp": timestamp_field(no_timestamp),
            });
            emit_json(out, &strip_null_timestamp(doc))?;
            Ok(0)
        }

        Command::Verify {
            g,
            interval,
            grid,
            tol,
            window,
            no_timestamp,
        } => {
            let domain = Interval::parse(&interval)?;
            let window = parse_window(&window)?;
            let map = map_from_expr(&g, domain)?;
            let report = verify_solution(&map, grid, window)?;
            let doc = verify_doc("verify", &report, Some(tol), no_timestamp);
            let passed = doc.passed.unwrap_or(false);
            emit_json(out, &doc)?;
            Ok(if passed { 0 } else { 1 })
        }

        Command::VerifyBoros {
            f,
            interval,
            grid,
            tol,
            window,
            no_timestamp,
        } => {
            let domain = Interval::parse(&interval)?;
            let window = parse_window(&window)?;
            let map = map_from_expr(&f, domain)?;
            let report = verify_boros(&map, grid, window)?;
            let passed = report.residual_sup <= tol;
            let doc = json!({
                "command": "verify-boros",
                "candidate": report.candidate,
                "domain": report.domain.to_string(),
                "window_lo": report.window.map(|w| w.0),
                "window_hi": report.window.map(|w| w.1),
                "grid_size": report.grid_size,
                "self_map_ok": report.self_map_ok,
                "residual_sup": report.residual_sup,
                "tolerance": tol,
                "passed": passed,
                "flags": report.flags,
                "timestamp": timestamp_field(no_timestamp),
            });
            emit_json(out, &strip_null_timestamp(doc))?;
            Ok(if passed { 0 } else { 1 })
        }

        Command::Classify {
            g,
            interval,
            grid,
            window,
            no_timestamp,
        } => {
            let domain = Interval::parse(&interval)?;
            let window = parse_window(&window)?;
            let map = map_from_expr(&g, domain)?;
            let report = classify_candidate(&map, grid, window)?;
            let doc = verify_doc("classify", &report, None, no_timestamp);
            emit_json(out, &doc)?;
            Ok(0)
        }

        Command::Solve {
            interval,
            grid,
            seed,
            decreasing,
            window,
            max_iterations,
            step,
            tolerance,
            out: out_file,
            format,
            no_timestamp,
        } => {
            let domain = Interval::parse(&interval)?;
            let window = parse_window(&window)?;
            let config = SolverConfig {
                grid_size: grid,
                max_iterations,
                step,
                tolerance,
                seed,
                monotone: !decreasing,
            };
            let report = solve(&config, &domain, window, None)?;
            let mut doc = serde_json::to_value(&report)
                .map_err(|e| PlieError::Numeric(format!("serialization: {e}")))?;
            doc["command"] = json!("solve");
            if let Some(ts) = timestamp_field(no_timestamp) {
                doc["timestamp"] = json!(ts);
            }
            if let Some(path) = out_file {
                let text = serde_json::to_string_pretty(&doc)
                    .map_err(|e| PlieError::Numeric(format!("serialization: {e}")))?;
                std::fs::write(&path, text)
                    .map_err(|e| PlieError::Config(format!("cannot write {path}: {e}")))?;
            }
            if format == Format::Csv {
                writeln!(out, "iteration,objective").map_err(|e| PlieError::Numeric(e.to_string()))?;
                for (i, v) in report.trace.iter().enumerate() {
                    writeln!(out, "{i},{v}").map_err(|e| PlieError::Numeric(e.to_string()))?;
                }
            } else {
                emit_json(out, &doc)?;
            }
            Ok(0)
        }

        Command::Falsify {
            interval,
            runs,
            seed,
            decreasing,
            window,
            no_timestamp,
        } => {
            let domain = Interval::parse(&interval)?;
            let window = parse_window(&window)?;
            let summary = falsification_suite(&domain, window, runs, seed, !decreasing)?;
            let mut doc = serde_json::to_value(&summary)
                .map_err(|e| PlieError::Numeric(format!("serialization: {e}")))?;
            doc["command"] = json!("falsify");
            doc["seed"] = json!(seed);
            if let Some(ts) = timestamp_field(no_timestamp) {
                doc["timestamp"] = json!(ts);
            }
            emit_json(out, &doc)?;
            Ok(0)
        }

        Command::Conjugate {
            f,
            g,
            interval,
            no_timestamp,
        } => {
            let (text, to_additive) = match (&f, &g) {
                (Some(t), None) => (t.clone(), true),
                (None, Some(t)) => (t.clone(), false),
                _ => {
                    return Err(PlieError::Config(
                        "conjugate needs exactly one of --f or --g".into(),
                    ))
                }
            };
            let domain = match interval {
                Some(lit) => Interval::parse(&lit)?,
                None => {
                    if to_additive {
                        Interval::new(0.0, f64::INFINITY, false, false).unwrap()
                    } else {
                        Interval::full_line()
                    }
                }
            };
            let input = map_from_expr(&text, domain)?;
            let result = if to_additive {
                conjugate_to_additive(&input)?
            } else {
                conjugate_to_multiplicative(&input)?
            };
            let closed = parse_expr(&result.describe())
                .ok()
                .and_then(|ast| detect_family(&ast))
                .map(|fam| match fam {
                    DetectedFamily::Identity => json!({"family": "identity"}),
                    DetectedFamily::Translation { c } => {
                        json!({"family": "translation", "c": c})
                    }
                    DetectedFamily::AffineNeg2 { c } => {
                        json!({"family": "affine_neg2", "c": c})
                    }
                    DetectedFamily::Linear { c } => json!({"family": "linear", "c": c}),
                    DetectedFamily::InverseSquare { c } => {
                        json!({"family": "inverse_square", "c": c})
                    }
                });
            let doc = json!({
                "command": "conjugate",
                "direction": if to_additive { "to_additive" } else { "to_multiplicative" },
                "input": input.describe(),
                "input_domain": input.domain().to_string(),
                "result": result.describe(),
                "result_domain": result.domain().to_string(),
                "closed_form": closed,
                "timestamp": timestamp_field(no_timestamp),
            });
            emit_json(out, &strip_null_timestamp(doc))?;
            Ok(0)
        }
    }
}

/// json! writes `"timestamp": null` when suppressed; drop the key instead so
/// suppressed output carries no trace of the field.
fn strip_null_timestamp(mut doc: serde_json::Value) -> serde_json::Value {
    if let Some(obj) = doc.as_object_mut() {
        if obj.get("timestamp").map_or(false, |v| v.is_null()) {
            obj.remove("timestamp");
        }
        if obj.get("window_lo").map_or(false, |v| v.is_null()) {
            obj.remove("window_lo");
            obj.remove("window_hi");
        }
    }
    doc
}


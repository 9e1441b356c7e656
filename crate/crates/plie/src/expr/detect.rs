//! Syntactic recognition of closed-form family shapes.

use crate::expr::ast::{BinaryOp, ExprAst, Func};

/// Family shape recognised in an expression tree, independent of any domain.
/// Whether the shape is a valid solution on a given interval is decided by
/// the classification modules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DetectedFamily {
    /// g(x) = x
    Identity,
    /// g(x) = x + c, c ≠ 0
    Translation { c: f64 },
    /// g(x) = −2x + c
    AffineNeg2 { c: f64 },
    /// f(x) = c·x, c > 0, c ≠ 1
    Linear { c: f64 },
    /// f(x) = c/x², c > 0
    InverseSquare { c: f64 },
}

/// Match the normalized tree against the shapes a·x + b and c·xᵖ and return
/// the recognised family, if any. Never misidentifies: a returned family
/// evaluates identically to the expression.
pub fn detect_family(ast: &ExprAst) -> Option<DetectedFamily> {
    if let Some((a, b)) = as_affine(ast) {
        if a == 1.0 && b == 0.0 {
            return Some(DetectedFamily::Identity);
        }
        if a == 1.0 {
            return Some(DetectedFamily::Translation { c: b });
        }
        if a == -2.0 {
            return Some(DetectedFamily::AffineNeg2 { c: b });
        }
        if b == 0.0 && a > 0.0 {
            return Some(DetectedFamily::Linear { c: a });
        }
        return None;
    }
    if let Some((c, p)) = as_power(ast) {
        if p == -2.0 && c > 0.0 {
            return Some(DetectedFamily::InverseSquare { c });
        }
        if p == 1.0 {
            if c == 1.0 {
                return Some(DetectedFamily::Identity);
            }
            if c > 0.0 {
                return Some(DetectedFamily::Linear { c });
            }
        }
    }
    None
}

/// Normalize to a·x + b if the tree is affine in x with constant subtrees.
pub(crate) fn as_affine(ast: &ExprAst) -> Option<(f64, f64)> {
    if let Some(b) = ast.as_constant() {
        return Some((0.0, b));
    }
    match ast {
        ExprAst::Var => Some((1.0, 0.0)),
        ExprAst::Neg(e) => {
            let (a, b) = as_affine(e)?;
            Some((-a, -b))
        }
        ExprAst::Binary(op, lhs, rhs) => match op {
            BinaryOp::Add => {
                let (a1, b1) = as_affine(lhs)?;
                let (a2, b2) = as_affine(rhs)?;
                Some((a1 + a2, b1 + b2))
            }
            BinaryOp::Sub => {
                let (a1, b1) = as_affine(lhs)?;
                let (a2, b2) = as_affine(rhs)?;
                Some((a1 - a2, b1 - b2))
            }
            BinaryOp::Mul => {
                if let Some(k) = lhs.as_constant() {
                    let (a, b) = as_affine(rhs)?;
                    Some((k * a, k * b))
                } else if let Some(k) = rhs.as_constant() {
                    let (a, b) = as_affine(lhs)?;
                    Some((k * a, k * b))
                } else {
                    None
                }
            }
            BinaryOp::Div => {
                let k = rhs.as_constant()?;
                if k == 0.0 {
                    return None;
                }
                let (a, b) = as_affine(lhs)?;
                Some((a / k, b / k))
            }
            BinaryOp::Pow => None,
        },
        _ => None,
    }
}

/// Normalize to c·xᵖ: matches x, x^p, c*x^p, x^p*c, x^p/c, c/x^p, sqrt(x).
pub(crate) fn as_power(ast: &ExprAst) -> Option<(f64, f64)> {
    match ast {
        ExprAst::Var => Some((1.0, 1.0)),
        ExprAst::Neg(e) => {
            let (c, p) = as_power(e)?;
            Some((-c, p))
        }
        ExprAst::Call(Func::Sqrt, e) if **e == ExprAst::Var => Some((1.0, 0.5)),
        ExprAst::Binary(BinaryOp::Pow, base, exponent) => {
            if **base != ExprAst::Var {
                return None;
            }
            let p = exponent.as_constant()?;
            Some((1.0, p))
        }
        ExprAst::Binary(BinaryOp::Mul, lhs, rhs) => {
            if let Some(k) = lhs.as_constant() {
                let (c, p) = as_power(rhs)?;
                Some((k * c, p))
            } else if let Some(k) = rhs.as_constant() {
                let (c, p) = as_power(lhs)?;
                Some((k * c, p))
            } else {
                None
            }
        }
        ExprAst::Binary(BinaryOp::Div, lhs, rhs) => {
            if let Some(k) = lhs.as_constant() {
                // k / x^p  ->  k * x^(-p)
                let (c, p) = as_power(rhs)?;
                if c == 0.0 {
                    return None;
                }
                Some((k / c, -p))
            } else {
                let k = rhs.as_constant()?;
                if k == 0.0 {
                    return None;
                }
                let (c, p) = as_power(lhs)?;
                Some((c / k, p))
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn detect(s: &str) -> Option<DetectedFamily> {
        detect_family(&parse(s).unwrap())
    }

    #[test]
    fn recognizes_core_shapes() {
        assert_eq!(detect("x"), Some(DetectedFamily::Identity));
        assert_eq!(detect("x+2"), Some(DetectedFamily::Translation { c: 2.0 }));
        assert_eq!(detect("x - 3"), Some(DetectedFamily::Translation { c: -3.0 }));
        assert_eq!(detect("-2*x+1"), Some(DetectedFamily::AffineNeg2 { c: 1.0 }));
        assert_eq!(detect("1 - 2*x"), Some(DetectedFamily::AffineNeg2 { c: 1.0 }));
        assert_eq!(detect("0.5*x"), Some(DetectedFamily::Linear { c: 0.5 }));
        assert_eq!(detect("3/x^2"), Some(DetectedFamily::InverseSquare { c: 3.0 }));
        assert_eq!(detect("3*x^(-2)"), Some(DetectedFamily::InverseSquare { c: 3.0 }));
    }

    #[test]
    fn constant_subtrees_fold() {
        assert_eq!(detect("x + (1+1)"), Some(DetectedFamily::Translation { c: 2.0 }));
        assert_eq!(detect("(4/2)*x/2"), Some(DetectedFamily::Identity));
    }

    #[test]
    fn rejects_non_family_shapes() {
        assert_eq!(detect("exp(x)"), None);
        assert_eq!(detect("x + exp(x)"), None);
        assert_eq!(detect("x*x"), None);
        assert_eq!(detect("-x"), None); // slope −1 is no family shape
        assert_eq!(detect("-3*x"), None); // negative linear coefficient
        assert_eq!(detect("-1/x^2"), None); // negative inverse-square coefficient
    }

    #[test]
    fn detected_family_matches_evaluation() {
        let cases = [("x+2", 2.0f64), ("-2*x+5", 5.0f64)];
        for (s, c) in cases {
            let ast = parse(s).unwrap();
            let fam = detect_family(&ast).unwrap();
            for x in [-2.0, -0.3, 0.0, 1.7, 10.0] {
                let direct = ast.eval(x).unwrap();
                let closed = match fam {
                    DetectedFamily::Translation { c } => x + c,
                    DetectedFamily::AffineNeg2 { c } => -2.0 * x + c,
                    _ => panic!("unexpected shape for {s}"),
                };
                assert!((direct - closed).abs() <= 1e-12 * (1.0 + c.abs() + x.abs()));
            }
        }
    }
}

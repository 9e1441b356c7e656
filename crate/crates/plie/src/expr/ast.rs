//! Expression trees: evaluation and canonical printing.

use std::fmt;

use crate::error::PlieError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl Func {
    pub fn name(&self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Const(f64),
    Var,
    Neg(Box<ExprAst>),
    Binary(BinaryOp, Box<ExprAst>, Box<ExprAst>),
    Call(Func, Box<ExprAst>),
}

impl ExprAst {
    pub fn constant(v: f64) -> Self {
        ExprAst::Const(v)
    }

    pub fn binary(op: BinaryOp, lhs: ExprAst, rhs: ExprAst) -> Self {
        ExprAst::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    /// Evaluate at `x`. Undefined sub-expressions (log or sqrt of a negative,
    /// division by zero) and overflow report an error; no non-finite value is
    /// ever returned.
    pub fn eval(&self, x: f64) -> Result<f64, PlieError> {
        let v = self.eval_inner(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(PlieError::Eval {
                x,
                reason: "overflow to a non-finite value".into(),
            })
        }
    }

    fn eval_inner(&self, x: f64) -> Result<f64, PlieError> {
        let fail = |reason: &str| PlieError::Eval {
            x,
            reason: reason.into(),
        };
        match self {
            ExprAst::Const(c) => Ok(*c),
            ExprAst::Var => Ok(x),
            ExprAst::Neg(e) => Ok(-e.eval_inner(x)?),
            ExprAst::Binary(op, a, b) => {
                let a = a.eval_inner(x)?;
                let b = b.eval_inner(x)?;
                match op {
                    BinaryOp::Add => Ok(a + b),
                    BinaryOp::Sub => Ok(a - b),
                    BinaryOp::Mul => Ok(a * b),
                    BinaryOp::Div => {
                        if b == 0.0 {
                            Err(fail("division by zero"))
                        } else {
                            Ok(a / b)
                        }
                    }
                    BinaryOp::Pow => {
                        let v = a.powf(b);
                        if v.is_nan() {
                            Err(fail("power of a negative base with fractional exponent"))
                        } else {
                            Ok(v)
                        }
                    }
                }
            }
            ExprAst::Call(f, e) => {
                let v = e.eval_inner(x)?;
                match f {
                    Func::Exp => Ok(v.exp()),
                    Func::Log => {
                        if v > 0.0 {
                            Ok(v.ln())
                        } else {
                            Err(fail("log of a non-positive value"))
                        }
                    }
                    Func::Sqrt => {
                        if v >= 0.0 {
                            Ok(v.sqrt())
                        } else {
                            Err(fail("sqrt of a negative value"))
                        }
                    }
                    Func::Abs => Ok(v.abs()),
                }
            }
        }
    }

    /// Replace every occurrence of the variable with `sub`.
    pub fn substitute(&self, sub: &ExprAst) -> ExprAst {
        match self {
            ExprAst::Const(c) => ExprAst::Const(*c),
            ExprAst::Var => sub.clone(),
            ExprAst::Neg(e) => ExprAst::Neg(Box::new(e.substitute(sub))),
            ExprAst::Binary(op, a, b) => {
                ExprAst::binary(*op, a.substitute(sub), b.substitute(sub))
            }
            ExprAst::Call(f, e) => ExprAst::Call(*f, Box::new(e.substitute(sub))),
        }
    }

    /// If the subtree contains no variable, fold it to its constant value.
    pub fn as_constant(&self) -> Option<f64> {
        match self {
            ExprAst::Const(c) => Some(*c),
            ExprAst::Var => None,
            ExprAst::Neg(e) => e.as_constant().map(|v| -v),
            ExprAst::Binary(op, a, b) => {
                let (a, b) = (a.as_constant()?, b.as_constant()?);
                let v = match op {
                    BinaryOp::Add => a + b,
                    BinaryOp::Sub => a - b,
                    BinaryOp::Mul => a * b,
                    BinaryOp::Div => a / b,
                    BinaryOp::Pow => a.powf(b),
                };
                v.is_finite().then_some(v)
            }
            ExprAst::Call(f, e) => {
                let v = e.as_constant()?;
                let v = match f {
                    Func::Exp => v.exp(),
                    Func::Log => v.ln(),
                    Func::Sqrt => v.sqrt(),
                    Func::Abs => v.abs(),
                };
                v.is_finite().then_some(v)
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            ExprAst::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => 1,
            ExprAst::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => 2,
            ExprAst::Neg(_) => 3,
            ExprAst::Binary(BinaryOp::Pow, ..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min_prec {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            ExprAst::Const(c) => write!(f, "{c}"),
            ExprAst::Var => write!(f, "x"),
            ExprAst::Neg(e) => {
                write!(f, "-")?;
                e.fmt_prec(f, 3)
            }
            ExprAst::Binary(op, a, b) => match op {
                BinaryOp::Add => {
                    a.fmt_prec(f, 1)?;
                    write!(f, " + ")?;
                    b.fmt_prec(f, 2)
                }
                BinaryOp::Sub => {
                    a.fmt_prec(f, 1)?;
                    write!(f, " - ")?;
                    b.fmt_prec(f, 2)
                }
                BinaryOp::Mul => {
                    a.fmt_prec(f, 2)?;
                    write!(f, "*")?;
                    b.fmt_prec(f, 3)
                }
                BinaryOp::Div => {
                    a.fmt_prec(f, 2)?;
                    write!(f, "/")?;
                    b.fmt_prec(f, 3)
                }
                BinaryOp::Pow => {
                    a.fmt_prec(f, 5)?;
                    write!(f, "^")?;
                    b.fmt_prec(f, 4)
                }
            },
            ExprAst::Call(func, e) => {
                write!(f, "{}(", func.name())?;
                e.fmt_prec(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

/// Canonical form: re-parsing the printed text yields an equal tree.
impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

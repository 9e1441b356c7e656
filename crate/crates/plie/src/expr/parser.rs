//! Recursive-descent parser for the expression grammar.

use crate::error::ParseError;
use crate::expr::ast::{BinaryOp, ExprAst, Func};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number(v) => format!("{v}"),
            Tok::Ident(s) => s.clone(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::End => "end of input".into(),
        }
    }
}

/// Token with its 1-based character position.
struct Spanned {
    tok: Tok,
    pos: usize,
}

fn tokenize(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push(Spanned { tok: Tok::Plus, pos });
                i += 1;
            }
            '-' => {
                out.push(Spanned { tok: Tok::Minus, pos });
                i += 1;
            }
            '*' => {
                out.push(Spanned { tok: Tok::Star, pos });
                i += 1;
            }
            '/' => {
                out.push(Spanned { tok: Tok::Slash, pos });
                i += 1;
            }
            '^' => {
                out.push(Spanned { tok: Tok::Caret, pos });
                i += 1;
            }
            '(' => {
                out.push(Spanned { tok: Tok::LParen, pos });
                i += 1;
            }
            ')' => {
                out.push(Spanned { tok: Tok::RParen, pos });
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let value: f64 = text
                    .parse()
                    .map_err(|_| ParseError::new(pos, "number", text.clone()))?;
                if !value.is_finite() {
                    return Err(ParseError::new(pos, "finite number", text));
                }
                out.push(Spanned {
                    tok: Tok::Number(value),
                    pos,
                });
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Spanned {
                    tok: Tok::Ident(text),
                    pos,
                });
            }
            other => {
                return Err(ParseError::new(pos, "expression token", other.to_string()));
            }
        }
    }
    out.push(Spanned {
        tok: Tok::End,
        pos: chars.len() + 1,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> &Spanned {
        let s = &self.toks[self.at];
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        s
    }

    fn error(&self, expected: &str) -> ParseError {
        let s = self.peek();
        ParseError::new(s.pos, expected, s.tok.describe())
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut node = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    node = ExprAst::binary(BinaryOp::Add, node, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    node = ExprAst::binary(BinaryOp::Sub, node, self.term()?);
                }
                _ => return Ok(node),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut node = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    node = ExprAst::binary(BinaryOp::Mul, node, self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    node = ExprAst::binary(BinaryOp::Div, node, self.unary()?);
                }
                _ => return Ok(node),
            }
        }
    }

    fn unary(&mut self) -> Result<ExprAst, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(ExprAst::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            // right-associative; the exponent may carry its own unary minus
            let exponent = self.unary()?;
            return Ok(ExprAst::binary(BinaryOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        match self.peek().tok.clone() {
            Tok::Number(v) => {
                self.bump();
                Ok(ExprAst::Const(v))
            }
            Tok::Ident(name) => {
                if name == "x" {
                    self.bump();
                    return Ok(ExprAst::Var);
                }
                let func = match name.as_str() {
                    "exp" => Func::Exp,
                    "log" | "ln" => Func::Log,
                    "sqrt" => Func::Sqrt,
                    "abs" => Func::Abs,
                    _ => return Err(self.error("'x' or a function name (exp, log, sqrt, abs)")),
                };
                self.bump();
                if self.peek().tok != Tok::LParen {
                    return Err(self.error("'('"));
                }
                self.bump();
                let arg = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.error("')'"));
                }
                self.bump();
                Ok(ExprAst::Call(func, Box::new(arg)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.error("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("number, 'x', function or '('")),
        }
    }
}

/// Parse an expression in the variable `x`.
pub fn parse(input: &str) -> Result<ExprAst, ParseError> {
    let toks = tokenize(input)?;
    let mut p = Parser { toks, at: 0 };
    let node = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.error("operator or end of input"));
    }
    Ok(node)
}

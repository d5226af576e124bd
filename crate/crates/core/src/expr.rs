//! Small expression language for periodic coefficients.
//!
//! ```text
//! expression := term (('+'|'-') term)*
//! term       := factor (('*'|'/') factor)*
//! factor     := number | 'x' | 'pi' | '(' expression ')' | func '(' expression ')' | '-' factor
//! func       := sin | cos | exp
//! ```
//!
//! Fourier records are written `fourier: a0, [a1, b1], [a2, b2], ...` and
//! denote `a0 + sum_k a_k cos(2 pi k x / L) + b_k sin(2 pi k x / L)`.
//! `reciprocal_fourier:` with the same payload denotes the reciprocal of
//! that series.

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    /// `position` is a 1-based character column; end of input is `len + 1`.
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } => *position,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
}

impl Func {
    fn apply(self, v: f64) -> f64 {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Exp => v.exp(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Trigonometric series `a0 + sum a_k cos(2 pi k x / L) + b_k sin(2 pi k x / L)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeries {
    pub a0: f64,
    /// `(a_k, b_k)` for `k = 1, 2, ...`.
    pub harmonics: Vec<(f64, f64)>,
    pub period: f64,
}

impl FourierSeries {
    pub fn eval(&self, x: f64) -> f64 {
        let w = 2.0 * PI * x / self.period;
        self.harmonics
            .iter()
            .enumerate()
            .fold(self.a0, |acc, (i, &(a, b))| {
                let kw = (i + 1) as f64 * w;
                acc + a * kw.cos() + b * kw.sin()
            })
    }

    fn write_payload(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.a0)?;
        for (a, b) in &self.harmonics {
            write!(f, ", [{a:?}, {b:?}]")?;
        }
        Ok(())
    }
}

/// Expression tree. `Dilate` and `Fourier` never come out of the text parser
/// directly; they appear in coefficients derived by rescaling or built from
/// Fourier records.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Neg(Box<Expr>),
    Call(Func, Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Fourier(FourierSeries),
    /// `inner(x * factor)`.
    Dilate(f64, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("division by zero at x = {x}")]
pub struct EvalError {
    pub x: f64,
}

impl Expr {
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::X => x,
            Expr::Neg(e) => -e.eval(x)?,
            Expr::Call(func, e) => func.apply(e.eval(x)?),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(x)?, b.eval(x)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == 0.0 {
                            return Err(EvalError { x });
                        }
                        a / b
                    }
                }
            }
            Expr::Fourier(series) => series.eval(x),
            Expr::Dilate(factor, e) => e.eval(x * factor)?,
        })
    }

    pub fn scaled(self, k: f64) -> Expr {
        Expr::Bin(BinOp::Mul, Box::new(Expr::Num(k)), Box::new(self))
    }
}

/// Parsed form of a coefficient spec string.
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedSpec {
    Expression(Expr),
    Fourier(FourierSeries),
    ReciprocalFourier(FourierSeries),
}

impl ParsedSpec {
    pub fn into_expr(self) -> Expr {
        match self {
            ParsedSpec::Expression(e) => e,
            ParsedSpec::Fourier(s) => Expr::Fourier(s),
            ParsedSpec::ReciprocalFourier(s) => Expr::Bin(
                BinOp::Div,
                Box::new(Expr::Num(1.0)),
                Box::new(Expr::Fourier(s)),
            ),
        }
    }
}

impl fmt::Display for ParsedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParsedSpec::Expression(e) => write!(f, "{e}"),
            ParsedSpec::Fourier(s) => {
                write!(f, "fourier: ")?;
                s.write_payload(f)
            }
            ParsedSpec::ReciprocalFourier(s) => {
                write!(f, "reciprocal_fourier: ")?;
                s.write_payload(f)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::X => write!(f, "x"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
            Expr::Bin(op, a, b) => {
                let sym = match op {
                    BinOp::Add => '+',
                    BinOp::Sub => '-',
                    BinOp::Mul => '*',
                    BinOp::Div => '/',
                };
                write!(f, "({a} {sym} {b})")
            }
            Expr::Fourier(s) => {
                write!(f, "fourier[L={:?}](", s.period)?;
                s.write_payload(f)?;
                write!(f, ")")
            }
            Expr::Dilate(k, e) => write!(f, "dilate[{k:?}]({e})"),
        }
    }
}

/// Parses a coefficient spec. `period` is the `L` used by Fourier records.
pub fn parse_spec(text: &str, period: f64) -> Result<ParsedSpec, ParseError> {
    let trimmed = text.trim_start();
    let offset = text.chars().count() - trimmed.chars().count();
    for (prefix, reciprocal) in [("reciprocal_fourier:", true), ("fourier:", false)] {
        if let Some(rest) = trimmed.strip_prefix(prefix) {
            let start = offset + prefix.chars().count();
            let series = parse_fourier_payload(rest, start, period)?;
            return Ok(if reciprocal {
                ParsedSpec::ReciprocalFourier(series)
            } else {
                ParsedSpec::Fourier(series)
            });
        }
    }
    parse_expression(text).map(ParsedSpec::Expression)
}

pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text, 0);
    let e = p.expression()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected character '{c}'")));
    }
    Ok(e)
}

fn parse_fourier_payload(
    text: &str,
    offset: usize,
    period: f64,
) -> Result<FourierSeries, ParseError> {
    let mut p = Parser::new(text, offset);
    let a0 = p.signed_number()?;
    let mut harmonics = Vec::new();
    loop {
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(',') => {
                p.bump();
                p.expect('[')?;
                let a = p.signed_number()?;
                p.expect(',')?;
                let b = p.signed_number()?;
                p.expect(']')?;
                harmonics.push((a, b));
            }
            Some(c) => return Err(p.error(format!("unexpected character '{c}'"))),
        }
    }
    Ok(FourierSeries {
        a0,
        harmonics,
        period,
    })
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    offset: usize,
}

impl Parser {
    fn new(text: &str, offset: usize) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            offset,
        }
    }

    fn error(&self, message: String) -> ParseError {
        ParseError::Syntax {
            position: self.offset + self.pos + 1,
            message,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn expression(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            self.skip_ws();
            let op = match self.peek() {
                Some('+') => BinOp::Add,
                Some('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            self.skip_ws();
            let op = match self.peek() {
                Some('*') => BinOp::Mul,
                Some('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input".into())),
            Some('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some('(') => {
                self.bump();
                let e = self.expression()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => Ok(Expr::Num(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.bump();
                }
                let ident: String = self.chars[start..self.pos].iter().collect();
                let func = match ident.as_str() {
                    "x" => return Ok(Expr::X),
                    "pi" => return Ok(Expr::Num(PI)),
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    "exp" => Func::Exp,
                    _ => {
                        self.pos = start;
                        return Err(self.error(format!("unknown identifier '{ident}'")));
                    }
                };
                self.expect('(')?;
                let arg = self.expression()?;
                self.expect(')')?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
        }
    }

    fn signed_number(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let negative = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let v = self.number()?;
        Ok(if negative { -v } else { v })
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = |p: &mut Self| {
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.bump();
            }
        };
        digits(self);
        if self.peek() == Some('.') {
            self.bump();
            digits(self);
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let mark = self.pos;
            self.bump();
            if matches!(self.peek(), Some('+' | '-')) {
                self.bump();
            }
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                digits(self);
            } else {
                self.pos = mark;
            }
        }
        let lit: String = self.chars[start..self.pos].iter().collect();
        lit.parse::<f64>().map_err(|_| {
            self.pos = start;
            self.error(if lit.is_empty() {
                "expected a number".to_string()
            } else {
                format!("malformed number '{lit}'")
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str, x: f64) -> f64 {
        parse_expression(s).unwrap().eval(x).unwrap()
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(eval("1 + 2*3", 0.0), 7.0);
        assert_eq!(eval("-2*3 + 1", 0.0), -5.0);
        assert_eq!(eval("2 - 3 - 4", 0.0), -5.0);
        assert_eq!(eval("8/2/2", 0.0), 2.0);
        assert_eq!(eval("--x", 1.5), 1.5);
        assert!((eval("sin(pi/2) + exp(0) + cos(0)", 0.0) - 3.0).abs() < 1e-15);
        assert_eq!(eval("1e-12*x", 2.0), 2e-12);
    }

    #[test]
    fn unbalanced_paren_position() {
        let err = parse_expression("1 + 2*sin(x").unwrap_err();
        assert_eq!(err.position(), 12);
    }

    #[test]
    fn other_syntax_errors() {
        assert_eq!(parse_expression("1 + * 2").unwrap_err().position(), 5);
        assert_eq!(parse_expression("tan(x)").unwrap_err().position(), 1);
        assert_eq!(parse_expression("1 2").unwrap_err().position(), 3);
        assert_eq!(parse_expression("").unwrap_err().position(), 1);
    }

    #[test]
    fn division_by_zero_is_reported() {
        let e = parse_expression("1/(x - 1)").unwrap();
        assert_eq!(e.eval(1.0), Err(EvalError { x: 1.0 }));
    }

    #[test]
    fn fourier_record() {
        let spec = parse_spec("fourier: 1, [0.5, 0], [0, -0.25]", 2.0).unwrap();
        let ParsedSpec::Fourier(s) = &spec else {
            panic!("not a fourier record")
        };
        assert_eq!(s.a0, 1.0);
        assert_eq!(s.harmonics, vec![(0.5, 0.0), (0.0, -0.25)]);
        assert!((s.eval(0.25) - (1.0 + 0.5 * (PI / 4.0).cos() - 0.25 * (PI / 2.0).sin())).abs() < 1e-15);
        let recip = parse_spec("reciprocal_fourier: 2", 1.0).unwrap().into_expr();
        assert_eq!(recip.eval(0.3).unwrap(), 0.5);
    }

    #[test]
    fn fourier_syntax_error_positions_are_absolute() {
        let err = parse_spec("fourier: 1, [2 3]", 1.0).unwrap_err();
        assert_eq!(err.position(), 16);
    }
}

//! Recursive-descent parser for the model expression grammar.
//!
//! Grammar: integer literals (rationals are written `1/2`), declared
//! identifiers, unary minus, `+ - * / ^` with the usual precedence
//! (`^` binds tightest, then unary minus, then `* /`, then `+ -`),
//! parentheses, and the clock token `exp(k t)` with integer `k`.
//!
//! Exponents are nonnegative integers, except on the clock token, which maps
//! to an integer power of the clock symbol. Division is general at the ratio
//! level; lowering a ratio to a polynomial additionally requires a constant
//! denominator. The bare identifier `t` is rejected: time enters only through
//! `exp(k t)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::monomial::{Monomial, Var};
use crate::poly::Polynomial;
use crate::ratio::Ratio;
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{msg} at line {line}, column {col}")]
pub struct ParseError {
    pub msg: String,
    pub line: u32,
    pub col: u32,
}

impl ParseError {
    fn new(msg: impl Into<String>, line: u32, col: u32) -> ParseError {
        ParseError {
            msg: msg.into(),
            line,
            col,
        }
    }
}

/// Name resolution for expressions: three spatial variables plus bound
/// parameters.
#[derive(Clone, Debug, Default)]
pub struct ParseContext {
    pub var_names: [String; 3],
    pub params: BTreeMap<String, Rational>,
}

impl ParseContext {
    pub fn new(var_names: [String; 3]) -> ParseContext {
        ParseContext {
            var_names,
            params: BTreeMap::new(),
        }
    }

    pub fn with_params(var_names: [String; 3], params: BTreeMap<String, Rational>) -> ParseContext {
        ParseContext { var_names, params }
    }

    fn lookup(&self, name: &str) -> Option<Binding> {
        if let Some(i) = self.var_names.iter().position(|v| v == name) {
            return Some(Binding::Variable(Var::from_spatial_index(i)));
        }
        self.params.get(name).map(|r| Binding::Param(r.clone()))
    }
}

enum Binding {
    Variable(Var),
    Param(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = src.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |c: char, line: &mut u32, col: &mut u32| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match ch {
            c if c.is_whitespace() => {
                chars.next();
                bump(c, &mut line, &mut col);
            }
            c if c.is_ascii_digit() => {
                let mut num = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        num.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                if chars.peek() == Some(&'.') {
                    return Err(ParseError::new(
                        "decimal literals are not supported; write an exact fraction like 1/2",
                        tline,
                        tcol,
                    ));
                }
                out.push(Spanned {
                    tok: Tok::Int(num.parse().unwrap()),
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        ident.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(ident),
                    line: tline,
                    col: tcol,
                });
            }
            _ => {
                let tok = match ch {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => {
                        return Err(ParseError::new(
                            format!("unexpected character {other:?}"),
                            tline,
                            tcol,
                        ))
                    }
                };
                chars.next();
                bump(ch, &mut line, &mut col);
                out.push(Spanned {
                    tok,
                    line: tline,
                    col: tcol,
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    ctx: &'a ParseContext,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (u32, u32) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or((1, 1), |s| (s.line, s.col))
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::new(msg, line, col)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        match self.next() {
            Some(s) if s.tok == tok => Ok(()),
            Some(s) => Err(ParseError::new(format!("expected {what}"), s.line, s.col)),
            None => Err(self.err(format!("expected {what}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<Ratio, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().map(|s| s.tok.clone()) {
                Some(Tok::Plus) => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Ratio, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().map(|s| s.tok.clone()) {
                Some(Tok::Star) => {
                    self.next();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    let (line, col) = self.here();
                    self.next();
                    let rhs = self.unary()?;
                    if rhs.is_zero() {
                        return Err(ParseError::new("division by zero", line, col));
                    }
                    acc = &acc / &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Ratio, ParseError> {
        if self.peek().map(|s| &s.tok) == Some(&Tok::Minus) {
            self.next();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ratio, ParseError> {
        let base = self.primary()?;
        if self.peek().map(|s| &s.tok) != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.next();
        let neg = if self.peek().map(|s| &s.tok) == Some(&Tok::Minus) {
            self.next();
            true
        } else {
            false
        };
        let (line, col) = self.here();
        let e: u32 = match self.next() {
            Some(Spanned {
                tok: Tok::Int(n), ..
            }) => n
                .try_into()
                .map_err(|_| ParseError::new("exponent too large", line, col))?,
            _ => return Err(ParseError::new("expected an integer exponent", line, col)),
        };
        if !neg {
            return Ok(base.pow(e));
        }
        // A negative exponent is only meaningful on a clock power, where it
        // stays inside the Laurent ring.
        let clock = base
            .as_polynomial()
            .filter(|p| p.num_terms() == 1 && p.degree() == 0 && !p.is_zero());
        let Some(p) = clock else {
            return Err(ParseError::new(
                "negative exponents are only allowed on exp(k t)",
                line,
                col,
            ));
        };
        let (m, c) = p.leading_term().unwrap();
        let es =
            m.es.checked_mul(e as i32)
                .ok_or_else(|| ParseError::new("clock exponent overflow", line, col))?;
        Ok(Ratio::from_poly(Polynomial::term(
            Monomial::clock(-es),
            crate::rational::rat_pow(&c, -(e as i64)),
        )))
    }

    fn primary(&mut self) -> Result<Ratio, ParseError> {
        let Some(s) = self.next() else {
            return Err(self.err("unexpected end of expression"));
        };
        match s.tok {
            Tok::Int(n) => Ok(Ratio::constant(Rational::from_integer(n))),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing parenthesis")?;
                Ok(inner)
            }
            Tok::Ident(name) if name == "exp" => self.clock_token(s.line, s.col),
            Tok::Ident(name) if name == "t" => Err(ParseError::new(
                "the time symbol only appears inside exp(k t)",
                s.line,
                s.col,
            )),
            Tok::Ident(name) => match self.ctx.lookup(&name) {
                Some(Binding::Variable(v)) => Ok(Ratio::from_poly(Polynomial::var(v))),
                Some(Binding::Param(r)) => Ok(Ratio::constant(r)),
                None => Err(ParseError::new(
                    format!("unknown identifier `{name}`"),
                    s.line,
                    s.col,
                )),
            },
            _ => Err(ParseError::new("expected a value", s.line, s.col)),
        }
    }

    /// `exp` `(` [sign] [integer] [`*`] `t` `)`
    fn clock_token(&mut self, line: u32, col: u32) -> Result<Ratio, ParseError> {
        self.expect(Tok::LParen, "( after exp")?;
        let mut sign = 1i64;
        if self.peek().map(|s| &s.tok) == Some(&Tok::Minus) {
            self.next();
            sign = -1;
        } else if self.peek().map(|s| &s.tok) == Some(&Tok::Plus) {
            self.next();
        }
        let mut k: i64 = 1;
        if let Some(Spanned {
            tok: Tok::Int(n), ..
        }) = self.peek().cloned()
        {
            self.next();
            k = i64::try_from(n).map_err(|_| ParseError::new("clock rate too large", line, col))?;
        }
        if self.peek().map(|s| &s.tok) == Some(&Tok::Star) {
            self.next();
        }
        match self.next() {
            Some(Spanned {
                tok: Tok::Ident(t), ..
            }) if t == "t" => {}
            _ => return Err(ParseError::new("expected `t` inside exp(...)", line, col)),
        }
        self.expect(Tok::RParen, ") after exp(k t")?;
        let es = i32::try_from(sign * k)
            .map_err(|_| ParseError::new("clock rate too large", line, col))?;
        Ok(Ratio::from_poly(Polynomial::term(
            Monomial::clock(es),
            Rational::from_integer(1.into()),
        )))
    }
}

/// Parse `src` into a polynomial fraction.
pub fn parse_ratio(src: &str, ctx: &ParseContext) -> Result<Ratio, ParseError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(ParseError::new("empty expression", 1, 1));
    }
    let mut p = Parser { toks, pos: 0, ctx };
    let r = p.expr()?;
    if let Some(extra) = p.peek() {
        return Err(ParseError::new(
            "trailing input after expression",
            extra.line,
            extra.col,
        ));
    }
    Ok(r)
}

/// Parse `src` into a polynomial; division must resolve to a constant
/// denominator.
pub fn parse_polynomial(src: &str, ctx: &ParseContext) -> Result<Polynomial, ParseError> {
    let r = parse_ratio(src, ctx)?;
    r.as_polynomial().ok_or_else(|| {
        ParseError::new(
            "expected a polynomial; division by a non-constant is only allowed in ratio entries",
            1,
            1,
        )
    })
}

/// Parse a constant expression into a rational.
pub fn parse_constant(src: &str, ctx: &ParseContext) -> Result<Rational, ParseError> {
    let p = parse_polynomial(src, ctx)?;
    p.as_constant()
        .ok_or_else(|| ParseError::new("expected a constant expression", 1, 1))
}

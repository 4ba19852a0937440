//! Expression parser for Ore-polynomial and coefficient-ring literals.
//!
//! Grammar:
//!
//! ```text
//! expr    := '-'? term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := atom ('^' nat)*
//! atom    := integer | ident | '(' expr ')' | 'seq' '(' '[' ints ']' ',' scalar ')'
//! ```
//!
//! Every product is evaluated through Ore multiplication, so `x*y` parses
//! to its left-coefficient normal form under the active spec. Division is
//! admitted only by units of degree zero (scalars everywhere; any nonzero
//! element over the rational-function field), which covers fraction
//! literals like `3/2` as well as `p(y)/q(y)`.

use std::fmt;
use std::sync::Arc;

use num::BigInt;

use ore_algebra::ore::{AlgebraSpec, Degree, OrePoly};
use ore_algebra::ring::RingKind;
use ore_algebra::scalar::Scalar;

/// Parse failure with 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut chars));
            }
            out.push(Spanned { tok: Tok::Int(s), line: tline, col: tcol });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                s.push(bump(&mut chars));
            }
            out.push(Spanned { tok: Tok::Ident(s), line: tline, col: tcol });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        bump(&mut chars);
        out.push(Spanned { tok, line: tline, col: tcol });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    spec: &'a Arc<AlgebraSpec>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or((1, 1), |s| (s.line, s.col))
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, message: message.into() }
    }

    fn eat(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.peek() == Some(tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {tok:?}")))
        }
    }

    fn expr(&mut self) -> Result<OrePoly, ParseError> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            -&self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<OrePoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let divisor = self.factor()?;
                    acc = &acc * &self.unit_inverse(divisor)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unit_inverse(&self, divisor: OrePoly) -> Result<OrePoly, ParseError> {
        if divisor.degree() > Degree::Of(0) {
            return Err(self.error("division by an element of positive degree"));
        }
        let inv = divisor
            .coeff(0)
            .inverse()
            .ok_or_else(|| self.error("division by a non-invertible element"))?;
        Ok(OrePoly::from_ring(self.spec, inv))
    }

    fn factor(&mut self) -> Result<OrePoly, ParseError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let Some(Tok::Int(n)) = self.peek().cloned() else {
                return Err(self.error("expected a natural number after '^'"));
            };
            self.pos += 1;
            let e: u32 = n
                .parse()
                .map_err(|_| self.error("exponent does not fit in a machine integer"))?;
            acc = acc.pow(e);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<OrePoly, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(digits)) => {
                self.pos += 1;
                let n: BigInt = digits.parse().expect("lexer produced digits");
                let s = Scalar::from_bigint(&self.spec.ring().base(), &n);
                Ok(OrePoly::from_ring(self.spec, self.spec.ring().from_scalar(s)))
            }
            Some(Tok::Ident(name)) if name == "x" => {
                self.pos += 1;
                Ok(OrePoly::x(self.spec))
            }
            Some(Tok::Ident(name)) if name == "seq" => {
                self.pos += 1;
                self.seq_literal()
            }
            Some(Tok::Ident(name)) => {
                if Some(name.as_str()) == self.spec.ring().var_name() {
                    self.pos += 1;
                    let y = self
                        .spec
                        .ring()
                        .var_elem()
                        .map_err(|e| self.error(e.to_string()))?;
                    Ok(OrePoly::from_ring(self.spec, y))
                } else {
                    Err(self.error(format!("unknown identifier {name:?}")))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.eat(&Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.error("expected a scalar, variable, 'x' or '('")),
        }
    }

    fn seq_literal(&mut self) -> Result<OrePoly, ParseError> {
        if !matches!(self.spec.ring().kind(), RingKind::Sequences) {
            return Err(self.error("seq(...) literals need a sequence coefficient ring"));
        }
        self.eat(&Tok::LParen)?;
        self.eat(&Tok::LBracket)?;
        let mut prefix = Vec::new();
        if self.peek() != Some(&Tok::RBracket) {
            loop {
                prefix.push(self.scalar_literal()?);
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.eat(&Tok::RBracket)?;
        self.eat(&Tok::Comma)?;
        let tail = self.scalar_literal()?;
        self.eat(&Tok::RParen)?;
        let elem = self.spec.ring().seq(prefix, tail);
        Ok(OrePoly::from_ring(self.spec, elem))
    }

    fn scalar_literal(&mut self) -> Result<Scalar, ParseError> {
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let Some(Tok::Int(num)) = self.peek().cloned() else {
            return Err(self.error("expected an integer or fraction"));
        };
        self.pos += 1;
        let field = self.spec.ring().base();
        let mut value = Scalar::from_bigint(&field, &num.parse::<BigInt>().expect("digits"));
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let Some(Tok::Int(den)) = self.peek().cloned() else {
                return Err(self.error("expected a denominator"));
            };
            self.pos += 1;
            let d = Scalar::from_bigint(&field, &den.parse::<BigInt>().expect("digits"));
            let inv = d
                .inverse()
                .ok_or_else(|| self.error("zero denominator in a scalar"))?;
            value = &value * &inv;
        }
        if negative {
            value = -&value;
        }
        Ok(value)
    }
}

/// Parses an Ore-polynomial expression under the given spec, normalizing
/// through Ore arithmetic.
pub fn parse_ore_expr(text: &str, spec: &Arc<AlgebraSpec>) -> Result<OrePoly, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, spec };
    let value = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.error("trailing input after the expression"));
    }
    Ok(value)
}

/// Parses a coefficient-ring element: an expression of Ore degree zero.
pub fn parse_ring_element(
    text: &str,
    spec: &Arc<AlgebraSpec>,
) -> Result<ore_algebra::ring::RingElement, ParseError> {
    let p = parse_ore_expr(text, spec)?;
    if p.degree() > Degree::Of(0) {
        return Err(ParseError {
            line: 1,
            col: 1,
            message: "expected a coefficient-ring element, found positive degree in x".into(),
        });
    }
    Ok(p.coeff(0))
}

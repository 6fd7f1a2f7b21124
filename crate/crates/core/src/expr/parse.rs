//! Recursive-descent parser for the text syntax of smooth expressions.
//!
//! Grammar (also the smooth-factor syntax of the CLI distribution DSL):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' INT)*  |  '-' factor
//! atom   := NUMBER | NUMBER 'i' | 'i' | 'x'
//!         | ('exp'|'sin'|'cos') '(' expr ')' | '(' expr ')'
//! ```
//!
//! Numbers accept an optional exponent part (`1.5e-3`). The Unicode minus
//! sign is accepted wherever `-` is.

use num_complex::Complex64;

use super::SmoothExpr;
use crate::error::{Error, Result};

/// Parse a complete string as a smooth expression.
pub fn parse_expr(src: &str) -> Result<SmoothExpr> {
    let mut p = ExprParser::new(src, 0);
    let e = p.parse_expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Cursor-based parser over a source string, re-usable by the distribution
/// DSL to pull one smooth sub-expression out of a larger input.
pub struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        col: pos + 1,
        msg: msg.into(),
    }
}

impl<'a> ExprParser<'a> {
    pub fn new(src: &'a str, pos: usize) -> Self {
        ExprParser { src, pos }
    }

    /// Current byte offset into the source.
    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.src[self.pos..].chars().next()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    /// Treat ASCII `-` and U+2212 interchangeably.
    fn eat_minus(&mut self) -> bool {
        self.eat('-') || self.eat('\u{2212}')
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.pos, format!("expected `{}`", c)))
        }
    }

    pub fn expect_end(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(syntax(self.pos, "unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn parse_expr(&mut self) -> Result<SmoothExpr> {
        let mut e = self.parse_term()?;
        loop {
            if self.eat('+') {
                e = e.add(&self.parse_term()?);
            } else if self.eat_minus() {
                e = e.sub(&self.parse_term()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn parse_term(&mut self) -> Result<SmoothExpr> {
        let mut e = self.parse_factor()?;
        loop {
            if self.eat('*') {
                e = e.mul(&self.parse_factor()?);
            } else if self.eat('/') {
                let pos = self.pos;
                e = e
                    .div(&self.parse_factor()?)
                    .map_err(|_| syntax(pos, "division by zero expression"))?;
            } else {
                return Ok(e);
            }
        }
    }

    /// One multiplicand: an atom with optional integer powers, or a
    /// unary-negated factor.
    pub fn parse_factor(&mut self) -> Result<SmoothExpr> {
        self.skip_ws();
        if self.eat_minus() {
            return Ok(self.parse_factor()?.neg());
        }
        let mut e = self.parse_atom()?;
        while self.eat('^') {
            let k = self.parse_int_exponent()?;
            e = e.pow(k);
        }
        Ok(e)
    }

    fn parse_int_exponent(&mut self) -> Result<i32> {
        self.skip_ws();
        let parenthesized = self.eat('(');
        self.skip_ws();
        let neg = self.eat_minus();
        let start = self.pos;
        while self.src[self.pos..]
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.bump();
        }
        if self.pos == start {
            return Err(syntax(self.pos, "expected integer exponent"));
        }
        let digits = &self.src[start..self.pos];
        let mut k: i32 = digits
            .parse()
            .map_err(|_| syntax(start, "integer exponent out of range"))?;
        if neg {
            k = -k;
        }
        if parenthesized {
            self.expect(')')?;
        }
        Ok(k)
    }

    fn parse_atom(&mut self) -> Result<SmoothExpr> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let v = self.parse_number()?;
                // a number immediately followed by a bare `i` is imaginary
                if self.at_ident("i") {
                    self.pos += 1;
                    return Ok(SmoothExpr::constant(Complex64::new(0.0, v)));
                }
                Ok(SmoothExpr::real(v))
            }
            Some('(') => {
                self.bump();
                let e = self.parse_expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.parse_ident();
                match name.as_str() {
                    "x" => Ok(SmoothExpr::var()),
                    "i" => Ok(SmoothExpr::i()),
                    "exp" | "sin" | "cos" => {
                        self.expect('(')?;
                        let inner = self.parse_expr()?;
                        self.expect(')')?;
                        Ok(match name.as_str() {
                            "exp" => inner.exp(),
                            "sin" => inner.sin(),
                            _ => inner.cos(),
                        })
                    }
                    other => Err(syntax(start, format!("unknown symbol `{}`", other))),
                }
            }
            Some(c) => Err(syntax(self.pos, format!("unexpected character `{}`", c))),
            None => Err(syntax(self.pos, "unexpected end of input")),
        }
    }

    fn parse_ident(&mut self) -> String {
        let start = self.pos;
        while self.src[self.pos..]
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.bump();
        }
        self.src[start..self.pos].to_string()
    }

    /// True if the input at the cursor is exactly the identifier `name`
    /// (not a prefix of a longer identifier).
    pub fn at_ident(&mut self, name: &str) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if !rest.starts_with(name) {
            return false;
        }
        !rest[name.len()..]
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    pub fn parse_number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
        // exponent part only when it cannot be the start of an identifier
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            if j < bytes.len() && bytes[j].is_ascii_digit() {
                i = j;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
        }
        if i == start {
            return Err(syntax(start, "expected a number"));
        }
        let text = &self.src[start..i];
        self.pos = i;
        text.parse::<f64>()
            .map_err(|_| syntax(start, format!("invalid number `{}`", text)))
    }
}

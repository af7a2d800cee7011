//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := rational | var | '(' expr ')'
//! var    := ('x'|'y') uint      (1 <= index <= n)
//! rational := uint ('/' uint)?
//! ```
//!
//! Whitespace between tokens is ignored. Positions in errors are 1-based
//! character columns.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::Poly;

/// Exponents above this are rejected to keep expansion bounded.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: at + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn describe(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("unexpected '{c}'"),
            None => "unexpected end of input".to_string(),
        }
    }

    fn digits(&mut self) -> Result<(usize, String), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            let msg = format!("expected a number, {}", self.describe());
            return self.err(start, msg);
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = Poly::zero(self.n);
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                negate = true;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { acc - t } else { acc + t };
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some('-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let (at, text) = self.digits()?;
            let e: u32 = match text.parse() {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => return self.err(at, format!("exponent {text} exceeds {MAX_EXPONENT}")),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    let msg = format!("expected ')', {}", self.describe());
                    return self.err(self.pos, msg);
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c @ ('x' | 'y')) => {
                let at = self.pos;
                self.pos += 1;
                if !self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
                    return self.err(self.pos, format!("expected a variable index after '{c}'"));
                }
                let (_, text) = self.digits()?;
                let k: usize = text.parse().unwrap_or(usize::MAX);
                if k == 0 || k > self.n {
                    return self.err(at, format!("variable {c}{text} out of range 1..{}", self.n));
                }
                Ok(if c == 'x' { Poly::x(self.n, k) } else { Poly::y(self.n, k) })
            }
            Some(c) if c.is_ascii_digit() => {
                let (_, num) = self.digits()?;
                let mut value = BigRational::from_integer(num.parse::<BigInt>().expect("digits"));
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let (at, den) = self.digits()?;
                    let den: BigInt = den.parse().expect("digits");
                    if den.is_zero() {
                        return self.err(at, "zero denominator");
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(Poly::constant(self.n, value))
            }
            _ => {
                let msg = format!("expected a number, variable or '(', {}", self.describe());
                self.err(self.pos, msg)
            }
        }
    }
}

/// Parses `text` as a polynomial in `x_1..x_n, y_1..y_n`.
pub fn parse_poly(text: &str, n: usize) -> Result<Poly, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        n,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        let msg = p.describe();
        return p.err(p.pos, msg);
    }
    Ok(out)
}

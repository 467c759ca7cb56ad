//! Text grammar for polynomials in `t`.
//!
//! ```text
//! poly  := [sign] term (sign term)*
//! term  := coeff ['*' power] | power
//! power := 't' ['^' digits]
//! coeff := digits ['/' digits]
//! ```
//!
//! Whitespace is allowed anywhere between tokens.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Rational, UniPoly};

/// Largest exponent the parser accepts. Polynomials are stored densely.
pub const MAX_EXPONENT: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at byte {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {0:?}")]
    Unexpected(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("exponent exceeds {MAX_EXPONENT}")]
    ExponentTooLarge,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(c) => self.err(ParseErrorKind::Unexpected(c)),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.unexpected());
        }
        Ok(&self.src[start..self.pos])
    }

    fn coefficient(&mut self) -> Result<Rational, ParseError> {
        let num: BigInt = self.digits()?.parse().expect("ascii digits");
        if !self.eat('/') {
            return Ok(Rational::from_integer(num));
        }
        let at = self.pos;
        let den: BigInt = self.digits()?.parse().expect("ascii digits");
        if den.is_zero() {
            return Err(ParseError {
                position: at,
                kind: ParseErrorKind::ZeroDenominator,
            });
        }
        Ok(Rational::new(num, den))
    }

    /// Parses `t` or `t^k`, returning `k`.
    fn power(&mut self) -> Result<usize, ParseError> {
        if !self.eat('t') {
            return Err(self.unexpected());
        }
        if !self.eat('^') {
            return Ok(1);
        }
        let at = self.pos;
        let digits = self.digits()?;
        match digits.parse::<usize>() {
            Ok(k) if k <= MAX_EXPONENT => Ok(k),
            _ => Err(ParseError {
                position: at,
                kind: ParseErrorKind::ExponentTooLarge,
            }),
        }
    }

    fn term(&mut self) -> Result<(Rational, usize), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('t') => Ok((Rational::from_integer(1.into()), self.power()?)),
            Some(c) if c.is_ascii_digit() => {
                let c = self.coefficient()?;
                if self.eat('*') {
                    Ok((c, self.power()?))
                } else {
                    Ok((c, 0))
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses a polynomial in `t` with rational coefficients.
pub fn parse_unipoly(src: &str) -> Result<UniPoly, ParseError> {
    let mut cur = Cursor { src, pos: 0 };
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.err(ParseErrorKind::Empty));
    }
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut negative = if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    };
    loop {
        let (c, k) = cur.term()?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::zero());
        }
        if negative {
            coeffs[k] -= c;
        } else {
            coeffs[k] += c;
        }
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('+') => negative = false,
            Some('-') => negative = true,
            Some(_) => return Err(cur.unexpected()),
        }
        cur.pos += 1;
    }
    Ok(UniPoly::from_coeffs(coeffs))
}

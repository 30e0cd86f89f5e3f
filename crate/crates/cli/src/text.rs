//! Text syntax for polynomials and rationals.
//!
//! ```text
//! poly  := term (("+"|"-") term)*
//! term  := coeff | coeff "*"? var | var
//! var   := "x" ("^" uint)?
//! coeff := ("-")? uint ("/" uint)?
//! ```
//!
//! Blanks between tokens are ignored. A leading `-` directly before `x` is
//! also accepted so that every printed polynomial parses back.

use std::fmt;

use derivimage_core::{Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { src: text.as_bytes(), pos: 0 }
    }

    fn skip_blanks(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_blanks();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.pos, message: message.into() })
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_blanks();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an unsigned integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit run"))
    }

    fn small_uint(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let n = self.uint()?;
        usize::try_from(n).map_err(|_| ParseError {
            position: start,
            message: "exponent too large".into(),
        })
    }

    /// `uint ("/" uint)?`, sign handled by the caller.
    fn unsigned_coeff(&mut self) -> Result<Rational, ParseError> {
        let numer = self.uint()?;
        if !self.eat(b'/') {
            return Ok(Rational::from_integer(numer));
        }
        self.skip_blanks();
        let at = self.pos;
        let denom = self.uint()?;
        if denom.is_zero() {
            return Err(ParseError { position: at, message: "zero denominator".into() });
        }
        Ok(Rational::new(numer, denom))
    }

    fn var_power(&mut self) -> Result<usize, ParseError> {
        if !self.eat(b'x') {
            return self.error("expected 'x'");
        }
        if self.eat(b'^') {
            self.small_uint()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(Rational, usize), ParseError> {
        let negative = self.eat(b'-');
        let sign = |c: Rational| if negative { -c } else { c };
        match self.peek() {
            Some(b'x') => Ok((sign(Rational::from_integer(1.into())), self.var_power()?)),
            Some(b) if b.is_ascii_digit() => {
                let c = sign(self.unsigned_coeff()?);
                if self.eat(b'*') || self.peek() == Some(b'x') {
                    Ok((c, self.var_power()?))
                } else {
                    Ok((c, 0))
                }
            }
            Some(_) => self.error("expected a coefficient or 'x'"),
            None => self.error("unexpected end of input"),
        }
    }
}

pub fn parse_poly(text: &str) -> Result<Polynomial, ParseError> {
    let mut lx = Lexer::new(text);
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut add = |(c, n): (Rational, usize)| {
        if coeffs.len() <= n {
            coeffs.resize(n + 1, Rational::zero());
        }
        coeffs[n] += c;
    };
    add(lx.term()?);
    loop {
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.pos += 1;
                add(lx.term()?);
            }
            Some(b'-') => {
                lx.pos += 1;
                let (c, n) = lx.term()?;
                add((-c, n));
            }
            Some(_) => return lx.error("expected '+', '-' or end of input"),
        }
    }
    Ok(Polynomial::new(coeffs))
}

/// `("-")? uint ("/" uint)?`
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let mut lx = Lexer::new(text);
    let negative = lx.eat(b'-');
    let r = lx.unsigned_coeff()?;
    if lx.peek().is_some() {
        return lx.error("trailing input after rational");
    }
    Ok(if negative { -r } else { r })
}

/// Comma-separated rationals, e.g. `0,1/2,-3`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let r = parse_rational(piece).map_err(|e| ParseError {
            position: e.position + offset,
            message: e.message,
        })?;
        out.push(r);
        offset += piece.len() + 1;
    }
    Ok(out)
}

/// Either an integer range `lo..hi` (inclusive) or a comma list of rationals.
pub fn parse_coeff_samples(text: &str) -> Result<Vec<Rational>, ParseError> {
    let Some((lo, hi)) = text.split_once("..") else {
        return parse_rational_list(text);
    };
    let bad = |position| ParseError { position, message: "expected an integer bound".into() };
    let lo: i64 = lo.trim().parse().map_err(|_| bad(0))?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad(text.find("..").unwrap() + 2))?;
    if lo > hi {
        return Err(ParseError { position: 0, message: "empty range".into() });
    }
    Ok((lo..=hi).map(|n| Rational::from_integer(n.into())).collect())
}

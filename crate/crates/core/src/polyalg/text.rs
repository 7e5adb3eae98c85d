//! Parser for the canonical polynomial text form.
//!
//! Grammar (whitespace between tokens is free):
//!
//! ```text
//! poly   := ['-'] term (('+'|'-') term)*  |  '0'
//! term   := [coeff] factor*               (at least one of the two)
//! coeff  := '(' rat ',' rat ')'  |  rat   (integer/rational shorthand)
//! rat    := ['-'] digits ['/' digits]
//! factor := ('z' digits | 'z') ['^' digits]
//! ```
//!
//! `z` alone is an alias for `z1`. The canonical serializer is
//! `HoloPoly`'s `Display`; `parse(display(p)) == p` for every polynomial.

use super::gaussian::{GaussianRational, Rational};
use super::poly::HoloPoly;
use num_bigint::BigInt;
use std::fmt;
use std::str::FromStr;

/// Parse failure with a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.offset + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            _ => Err(self.error(format!("expected '{}'", c as char))),
        }
    }

    fn error(&self, message: String) -> ParseError {
        ParseError {
            offset: self.pos.min(self.src.len()),
            message,
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits".into()));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        BigInt::from_str(s).map_err(|e| self.error(format!("bad integer: {e}")))
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let neg = if self.peek() == Some(b'-') {
            self.bump();
            true
        } else {
            if self.peek() == Some(b'+') {
                self.bump();
            }
            false
        };
        let num = self.digits()?;
        let den = if self.peek() == Some(b'/') {
            self.bump();
            let d = self.digits()?;
            if d == BigInt::from(0) {
                return Err(self.error("zero denominator".into()));
            }
            d
        } else {
            BigInt::from(1)
        };
        let r = Rational::new(num, den);
        Ok(if neg { -r } else { r })
    }
}

/// Parse a polynomial in `num_vars` variables from its text form.
pub fn parse_poly(src: &str, num_vars: usize) -> Result<HoloPoly, ParseError> {
    let mut lx = Lexer::new(src);
    let mut poly = HoloPoly::zero(num_vars);
    let mut sign_negative = false;
    if lx.peek() == Some(b'-') {
        lx.bump();
        sign_negative = true;
    }
    loop {
        let term = parse_term(&mut lx, num_vars)?;
        poly = if sign_negative { &poly - &term } else { &poly + &term };
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.bump();
                sign_negative = false;
            }
            Some(b'-') => {
                lx.bump();
                sign_negative = true;
            }
            Some(c) => return Err(lx.error(format!("unexpected character '{}'", c as char))),
        }
    }
    Ok(poly)
}

fn parse_term(lx: &mut Lexer<'_>, num_vars: usize) -> Result<HoloPoly, ParseError> {
    let mut coeff = GaussianRational::one();
    let mut have_any = false;
    // optional leading coefficient
    match lx.peek() {
        Some(b'(') => {
            lx.bump();
            let re = lx.rational()?;
            lx.expect(b',')?;
            let im = lx.rational()?;
            lx.expect(b')')?;
            coeff = GaussianRational::new(re, im);
            have_any = true;
        }
        Some(c) if c.is_ascii_digit() => {
            let r = lx.rational()?;
            coeff = GaussianRational::new(r, Rational::from_integer(BigInt::from(0)));
            have_any = true;
        }
        _ => {}
    }
    let mut exps = vec![0u32; num_vars];
    while let Some(b'z') = lx.peek() {
        lx.bump();
        let var = if lx
            .peek()
            .is_some_and(|c| c.is_ascii_digit())
        {
            let d = lx.digits()?;
            let idx: usize = d
                .try_into()
                .map_err(|_| lx.error("variable index too large".into()))?;
            if idx == 0 {
                return Err(lx.error("variable indices start at 1".into()));
            }
            idx - 1
        } else {
            0
        };
        if var >= num_vars {
            return Err(lx.error(format!(
                "variable z{} exceeds the declared count {}",
                var + 1,
                num_vars
            )));
        }
        let exp: u32 = if lx.peek() == Some(b'^') {
            lx.bump();
            let d = lx.digits()?;
            d.try_into()
                .map_err(|_| lx.error("exponent too large".into()))?
        } else {
            1
        };
        exps[var] += exp;
        have_any = true;
    }
    if !have_any {
        return Err(lx.error("expected a coefficient or a variable".into()));
    }
    Ok(HoloPoly::monomial(num_vars, exps, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_shorthand() {
        let p = parse_poly("z1", 2).unwrap();
        assert_eq!(p, HoloPoly::var(2, 0));
        let q = parse_poly("2 z1^2 - z2 + 1/2", 2).unwrap();
        let expected = HoloPoly::from_terms(
            2,
            vec![
                (vec![2, 0], GaussianRational::from_integer(2)),
                (vec![0, 1], GaussianRational::from_integer(-1)),
                (vec![0, 0], GaussianRational::from_ratios(1, 2, 0, 1)),
            ],
        );
        assert_eq!(q, expected);
    }

    #[test]
    fn parses_complex_coefficients() {
        let p = parse_poly("(1,1) z1^1 z2^1", 2).unwrap();
        let expected = HoloPoly::monomial(2, vec![1, 1], GaussianRational::from_integers(1, 1));
        assert_eq!(p, expected);
    }

    #[test]
    fn zero_and_aliases() {
        assert!(parse_poly("0", 2).unwrap().is_zero());
        assert_eq!(parse_poly("z", 1).unwrap(), HoloPoly::var(1, 0));
    }

    #[test]
    fn display_round_trip() {
        let p = parse_poly("(1/2,-1/3) z1^2 z2 + 4 z2^3 - z1 + (0,2)", 2).unwrap();
        let text = p.to_string();
        let q = parse_poly(&text, 2).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_poly("z3", 2).unwrap_err();
        assert!(err.message.contains("z3"));
        let err2 = parse_poly("1 + &", 2).unwrap_err();
        assert!(err2.offset >= 4);
        assert!(parse_poly("z1 ^", 2).is_err());
    }
}

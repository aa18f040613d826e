//! Text grammar for polynomials:
//!
//! ```text
//! expr   := ["+" | "-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := atom ["^" integer]
//! atom   := integer ["/" integer] | var | "(" expr ")"
//! var    := "x[" integer ("," integer)* "]" | "t[" integer "]"
//! ```
//!
//! Whitespace is insignificant. The printer in [`Polynomial::to_text`] only
//! emits this grammar, so parsing a printed polynomial gives it back.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::var::Var;
use super::Rational;
use crate::error::{Error, ParseError, Result};

const MAX_EXPONENT: u32 = 1000;
const MAX_POLY_POWER: u32 = 64;
const MAX_TERMS: usize = 100_000;
const MAX_COEFF_BITS: u64 = 1 << 16;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: at + 1,
            message: message.into(),
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

    fn expect(&mut self, ch: u8) -> std::result::Result<(), ParseError> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(self.pos, format!("expected '{}'", ch as char)))
        }
    }

    fn digits(&mut self) -> std::result::Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(start, "expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok((start, s))
    }

    fn small_int(&mut self) -> std::result::Result<(usize, u32), ParseError> {
        let (start, s) = self.digits()?;
        s.parse::<u32>()
            .map(|v| (start, v))
            .map_err(|_| self.error(start, "integer out of range"))
    }

    fn expr(&mut self) -> std::result::Result<Polynomial, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
            self.check_size(&acc)?;
        }
        Ok(acc)
    }

    fn check_size(&self, p: &Polynomial) -> std::result::Result<(), ParseError> {
        if p.len() > MAX_TERMS {
            return Err(self.error(self.pos, "expression expands to too many terms"));
        }
        Ok(())
    }

    fn term(&mut self) -> std::result::Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            if acc.len().saturating_mul(rhs.len()) > MAX_TERMS {
                return Err(self.error(self.pos, "expression expands to too many terms"));
            }
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> std::result::Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let (at, e) = self.small_int()?;
        if e > MAX_EXPONENT || (base.len() > 1 && e > MAX_POLY_POWER) {
            return Err(self.error(at, "exponent too large"));
        }
        let coeff_bits = |p: &Polynomial| p.terms().map(|(_, c)| c.numer().bits().max(c.denom().bits())).max().unwrap_or(0);
        let base_bits = coeff_bits(&base);
        let mut acc = Polynomial::one();
        for bit in (0..u32::BITS - e.leading_zeros()).rev() {
            if 2 * coeff_bits(&acc) + base_bits > MAX_COEFF_BITS {
                return Err(self.error(at, "coefficient too large"));
            }
            acc = &acc * &acc;
            if e >> bit & 1 == 1 {
                acc = &acc * &base;
            }
            self.check_size(&acc)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> std::result::Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let (_, num) = self.digits()?;
                let num: BigInt = num.parse().expect("digits form an integer");
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let (at, d) = self.digits()?;
                    let d: BigInt = d.parse().expect("digits form an integer");
                    if d.is_zero() {
                        return Err(self.error(at, "zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(Polynomial::constant(Rational::new(num, den)))
            }
            Some(b'x') | Some(b't') => {
                let start = self.pos;
                let aux = self.src[self.pos] == b't';
                self.pos += 1;
                self.expect(b'[')?;
                let mut entries = vec![self.small_int()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    entries.push(self.small_int()?);
                }
                self.expect(b']')?;
                let values: Vec<u32> = entries.iter().map(|&(_, v)| v).collect();
                let var = if aux {
                    if values.len() != 1 || values[0] == 0 {
                        return Err(self.error(start, "auxiliary variables take one positive index"));
                    }
                    Var::t(values[0])
                } else {
                    Var::tuple(&values).map_err(|e| self.error(start, e.to_string()))?
                };
                Ok(Polynomial::from_monomial(Monomial::var(var)))
            }
            Some(_) => Err(self.error(self.pos, "unexpected character")),
            None => Err(self.error(self.pos, "unexpected end of input")),
        }
    }
}

fn parse_on_line(text: &str, line: usize) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        line,
    };
    let poly = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error(p.pos, "trailing input").into());
    }
    poly.arity()?;
    Ok(poly)
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    parse_on_line(text, 1)
}

/// Parses a single monomial with coefficient 1, such as `x[1]^2*x[2]` or `1`.
pub fn parse_monomial(text: &str) -> Result<Monomial> {
    let p = parse_polynomial(text)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if c.is_one() => Ok(m.clone()),
        _ => Err(Error::InvalidArgument(format!("'{text}' is not a monomial"))),
    }
}

/// One polynomial per line; blank lines and `#` comments are skipped.
/// Errors carry the 1-based line number of the offending line.
pub fn parse_polynomial_list(text: &str) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_on_line(line, i + 1)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::order::TermOrder;

    #[test]
    fn parses_grammar() {
        let p = parse_polynomial("x[1]*x[2]^2 - x[3]^2").unwrap();
        assert_eq!(p.len(), 2);
        let q = parse_polynomial(" ( x[1] - x[2] ) * (x[1]+x[2]) ").unwrap();
        assert_eq!(q, parse_polynomial("x[1]^2 - x[2]^2").unwrap());
        let r = parse_polynomial("-1/2*x[1,2]*t[3] + 4/6").unwrap();
        assert_eq!(r.to_text(&TermOrder::Lex), "-1/2*x[1,2]*t[3] + 2/3");
    }

    #[test]
    fn powers() {
        let fifth = parse_polynomial("(x[1] + 1)^5").unwrap();
        assert_eq!(fifth, parse_polynomial("x[1]^5 + 5*x[1]^4 + 10*x[1]^3 + 10*x[1]^2 + 5*x[1] + 1").unwrap());
        assert_eq!(parse_polynomial("2^10 - 1024").unwrap(), Polynomial::zero());
        assert_eq!(parse_polynomial("(x[1]-x[2])^0").unwrap(), Polynomial::one());
        let big = parse_polynomial("777777777^777").unwrap();
        assert_eq!(big.len(), 1);
        assert!(parse_polynomial("x[1]^1001").is_err());
        assert!(parse_polynomial("(9^999)^999").is_err());
    }

    #[test]
    fn reports_positions() {
        let e = parse_polynomial("x[1] + * x[2]").unwrap_err();
        match e {
            Error::Parse(pe) => assert_eq!((pe.line, pe.column), (1, 8)),
            other => panic!("unexpected {other:?}"),
        }
        let e = parse_polynomial_list("x[1]\n# comment\nx[2] +\n").unwrap_err();
        match e {
            Error::Parse(pe) => assert_eq!(pe.line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "x[0]", "x[1,1]", "t[1,2]", "1/0", "x[1]^", "x[1] x[2]", "x[1] + x[1,2]", "(x[1]+x[2])^100"] {
            assert!(parse_polynomial(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn list_and_monomial() {
        let v = parse_polynomial_list("# gens\nx[1]\n\nx[2]  # second\n").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(parse_monomial("x[1]^3*x[2]").unwrap(), Monomial::from_exponents(&[3, 1]));
        assert!(parse_monomial("2*x[1]").is_err());
        assert!(parse_monomial("x[1]+x[2]").is_err());
    }
}

//! Canonical text form of scalars.
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := coeff ['*' 'q^(' int ['/' int] ')']
//! scalar := poly | '(' poly ')/(' poly ')'
//! ```
//!
//! Terms are printed in increasing powers of `q`, without whitespace.
//! The parser also accepts whitespace and a bare `q^(e)` with an implicit
//! coefficient of 1.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use super::{ExactScalar, LaurentPoly};
use crate::error::{Error, Result};

fn write_poly(f: &mut fmt::Formatter<'_>, p: &LaurentPoly, scale: i64) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (e, c)) in p.terms().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, "-")?;
        } else {
            write!(f, "+")?;
        }
        write!(f, "{}", mag)?;
        if e != 0 {
            let q = Ratio::new(e, scale);
            if q.is_integer() {
                write!(f, "*q^({})", q.numer())?;
            } else {
                write!(f, "*q^({}/{})", q.numer(), q.denom())?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write_poly(f, self.numerator(), self.scale())
        } else {
            write!(f, "(")?;
            write_poly(f, self.numerator(), self.scale())?;
            write!(f, ")/(")?;
            write_poly(f, self.denominator(), self.scale())?;
            write!(f, ")")
        }
    }
}

/// Polynomial parsed with rational q-exponents, before choosing a resolution.
type RawPoly = Vec<(Ratio<i64>, BigRational)>;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Self {
            s: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!(
            "{} at byte {} in {:?}",
            msg,
            self.pos,
            String::from_utf8_lossy(self.s)
        )))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse::<BigInt>().unwrap())
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let d = self.digits()?;
        let v: i64 = d
            .try_into()
            .or_else(|_| self.err("exponent does not fit in 64 bits"))?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<Ratio<i64>> {
        self.expect(b'q')?;
        self.expect(b'^')?;
        self.expect(b'(')?;
        let n = self.signed_int()?;
        let d = if self.eat(b'/') {
            self.signed_int()?
        } else {
            1
        };
        if d == 0 {
            return self.err("zero exponent denominator");
        }
        self.expect(b')')?;
        Ok(Ratio::new(n, d))
    }

    fn term(&mut self, negative: bool) -> Result<(Ratio<i64>, BigRational)> {
        let mut coeff = if self.peek() == Some(b'q') {
            BigRational::one()
        } else {
            let n = self.digits()?;
            let d = if self.eat(b'/') {
                self.digits()?
            } else {
                BigInt::one()
            };
            if d.is_zero() {
                return self.err("zero denominator");
            }
            BigRational::new(n, d)
        };
        if negative {
            coeff = -coeff;
        }
        let mut exp = Ratio::from_integer(0);
        if self.peek() == Some(b'q') || self.eat(b'*') {
            exp = self.exponent()?;
        }
        Ok((exp, coeff))
    }

    fn poly(&mut self) -> Result<RawPoly> {
        let mut out = Vec::new();
        let mut neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        loop {
            out.push(self.term(neg)?);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    neg = true;
                }
                _ => break,
            }
        }
        Ok(out)
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn resolution(polys: &[&RawPoly]) -> i64 {
    polys
        .iter()
        .flat_map(|p| p.iter())
        .fold(1i64, |l, (e, _)| l.lcm(e.denom()))
}

fn to_laurent(p: &RawPoly, scale: i64) -> LaurentPoly {
    LaurentPoly::from_terms(p.iter().map(|(e, c)| ((e * scale).to_integer(), c.clone())))
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        if p.peek().is_none() {
            return p.err("empty scalar");
        }
        if p.peek() == Some(b'(') {
            p.pos += 1;
            let num = p.poly()?;
            p.expect(b')')?;
            p.expect(b'/')?;
            p.expect(b'(')?;
            let den = p.poly()?;
            p.expect(b')')?;
            if !p.at_end() {
                return p.err("trailing input");
            }
            let scale = resolution(&[&num, &den]);
            ExactScalar::from_parts(to_laurent(&num, scale), to_laurent(&den, scale), scale)
        } else {
            let num = p.poly()?;
            if !p.at_end() {
                return p.err("trailing input");
            }
            let scale = resolution(&[&num]);
            Ok(ExactScalar::from_poly(to_laurent(&num, scale), scale))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{qint, QExponent};

    #[test]
    fn prints_in_increasing_powers() {
        let x = &(&ExactScalar::one() + &ExactScalar::q_pow_int(2)) + &ExactScalar::q_pow_int(4);
        assert_eq!(x.to_string(), "1+1*q^(2)+1*q^(4)");
        assert_eq!(qint(2).to_string(), "1*q^(-1)+1*q^(1)");
        assert_eq!(ExactScalar::zero().to_string(), "0");
        assert_eq!(
            ExactScalar::q_pow(QExponent::new(-1, 2)).to_string(),
            "1*q^(-1/2)"
        );
    }

    #[test]
    fn prints_quotients() {
        let x = ExactScalar::one()
            .checked_div(&ExactScalar::one_minus_q_pow(QExponent::from_int(2)))
            .unwrap();
        assert_eq!(x.to_string(), "(-1)/(-1+1*q^(2))");
    }

    #[test]
    fn parses_what_it_prints() {
        for s in [
            "0",
            "1",
            "-3/4",
            "1+1*q^(2)+1*q^(4)",
            "-1*q^(-1/3)+2/5*q^(2/3)",
            "(-1)/(-1+1*q^(2))",
        ] {
            let x: ExactScalar = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
    }

    #[test]
    fn parser_normalises_input() {
        let x: ExactScalar = "(1 - q^(6)) / (1 - q^(2))".parse().unwrap();
        assert_eq!(x.to_string(), "1+1*q^(2)+1*q^(4)");
        let y: ExactScalar = "0*q^(1/2) + 2*q^(2/4)".parse().unwrap();
        assert_eq!(y.to_string(), "2*q^(1/2)");
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "1+", "q^(1", "(1)/(0)", "1*q^(1/0)", "1 2", "x"] {
            assert!(s.parse::<ExactScalar>().is_err(), "{s:?}");
        }
    }
}

//! Textual syntax for elements of ℚ(u).
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('+' | '-') factor | atom ('^' digits)?
//! atom   := digits | 'u' | '(' expr ')'
//! ```
//!
//! Exponents are unsigned integers, so `u^-2` is rejected; write `1/u^2`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::{Poly, RatFun};
use crate::error::Error;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type PResult<T> = std::result::Result<T, String>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn expr(&mut self) -> PResult<RatFun> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<RatFun> {
        let mut acc = self.factor()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = if c == b'*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs).map_err(|_| "division by zero".to_string())?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PResult<RatFun> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        return Err(format!("expected unsigned exponent at offset {}", self.pos));
                    }
                    let e: u32 = self.digits().parse().map_err(|_| "exponent out of range".to_string())?;
                    return Ok(base.pow(e));
                }
                Ok(base)
            }
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> PResult<RatFun> {
        match self.peek() {
            Some(b'u') => {
                self.pos += 1;
                Ok(RatFun::u())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.bump() != Some(b')') {
                    return Err("unbalanced parenthesis".into());
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().map_err(|_| "bad integer".to_string())?;
                Ok(RatFun::from_rational(num_rational::BigRational::new(n, BigInt::one())))
            }
            Some(c) => Err(format!("unexpected `{}` at offset {}", c as char, self.pos)),
            None => Err("unexpected end of input".into()),
        }
    }
}

/// Parses a rational function; the error carries a human-readable reason.
pub fn parse_ratfun(text: &str) -> Result<RatFun, String> {
    let compact: Vec<u8> = text.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser { src: &compact, pos: 0 };
    let value = p.expr()?;
    if p.pos != compact.len() {
        return Err(format!("trailing input at offset {}", p.pos));
    }
    Ok(value)
}

impl FromStr for RatFun {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_ratfun(s).map_err(Error::Invalid)
    }
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let r: RatFun = s.parse()?;
        if !r.is_polynomial() {
            return Err(Error::Invalid(format!("`{s}` is not a polynomial")));
        }
        Ok(r.num().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    #[test]
    fn parses_documented_forms() {
        let a = rf("(u^2-u)/(u+1)");
        assert_eq!(a.num(), &Poly::from_ints(&[0, -1, 1]));
        assert_eq!(a.den(), &Poly::from_ints(&[1, 1]));
        let b = rf(" - 1 / u ^ 2 ");
        assert_eq!(b, (-RatFun::u().pow(2).inv().unwrap()));
        assert_eq!(rf("3/2").as_rational().unwrap(), num_rational::BigRational::new(3.into(), 2.into()));
        assert_eq!(rf("2*u/2"), RatFun::u());
    }

    #[test]
    fn rejects_negative_exponent_and_garbage() {
        assert!(parse_ratfun("u^-2").is_err());
        assert!(parse_ratfun("").is_err());
        assert!(parse_ratfun("(u+1").is_err());
        assert!(parse_ratfun("u+").is_err());
        assert!(parse_ratfun("1/0").is_err());
        assert!(parse_ratfun("x").is_err());
        assert!(parse_ratfun("2u").is_err());
    }

    #[test]
    fn display_reparses() {
        for s in ["(u^2-u)/(u+1)", "-1/u^2", "3/2", "-3/2*u^2/(u+1)", "u^3-7/3*u+2", "0", "(u+1)/(u^2-u)"] {
            let v = rf(s);
            assert_eq!(rf(&v.to_string()), v, "{s}");
        }
    }
}

use num_bigint::BigInt;

use super::field::Rational;
use super::poly::{vars_of, MultiPoly, Vars};
use crate::error::{Error, Result};

/// Parse a polynomial written in the usual notation over `vars`.
///
/// Juxtaposition multiplies (`3x^2y` = 3·x²·y); identifiers are one letter
/// optionally followed by digits or `_digits` (`x1`, `X_3`); `/` divides by an integer.
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<MultiPoly> {
    let vars = vars_of(vars);
    let mut p = Parser { s: src.as_bytes(), pos: 0, vars };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: Vars,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.s)))
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

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero_in(self.vars.clone());
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => return Ok(acc),
            };
            first = false;
            let t = self.term()?;
            acc = if sign > 0 { acc + t } else { acc - t };
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.number()?;
                    if d == BigInt::from(0) {
                        return Err(Error::DivisionByZero);
                    }
                    acc = acc.scale(&Rational::new(1.into(), d));
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => acc = acc * self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                e
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                MultiPoly::constant_in(self.vars.clone(), Rational::from_integer(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                if self.s.get(self.pos) == Some(&b'_') {
                    self.pos += 1;
                }
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                MultiPoly::var_in(self.vars.clone(), name)?
            }
            _ => return Err(self.err("expected a factor")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.number()?;
            let k: u32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{frac, rat};

    #[test]
    fn juxtaposition_and_powers() {
        let p = parse_poly("3x^2y^2 - 4y^3 + x(y - 1)/2", &["x", "y"]).unwrap();
        assert_eq!(p.coeff(&[2, 2]), rat(3));
        assert_eq!(p.coeff(&[0, 3]), rat(-4));
        assert_eq!(p.coeff(&[1, 1]), frac(1, 2));
        assert_eq!(p.coeff(&[1, 0]), frac(-1, 2));
        let q = parse_poly("X_3*X_4 + s1^2", &["s1", "X_3", "X_4"]).unwrap();
        assert_eq!(q.num_terms(), 2);
        assert!(parse_poly("x + w", &["x"]).is_err());
        assert!(parse_poly("x +", &["x"]).is_err());
    }
}

//! Text parser for polynomial expressions.
//!
//! Grammar: sums and differences of products of factors; a factor is an
//! integer, a generator or named symbol, or a parenthesized expression,
//! optionally raised to an integer power. Division is allowed by integer
//! constants only, e.g. `1/5*(11*b2^2 - 117*b4)`.

use super::coeff::{Coeff, Rat};
use super::error::{AlgResult, AlgebraError};
use super::poly::{GeneratorTable, Poly};
use num_bigint::BigInt;
use std::sync::Arc;

/// Parse an expression whose identifiers are generators of `table`.
pub fn parse_poly<C: Coeff>(table: &Arc<GeneratorTable>, src: &str) -> AlgResult<Poly<C>> {
    parse_with(table, src, &|_| None)
}

/// Parse with an extra resolver for named symbols that are not generators.
pub fn parse_with<C: Coeff>(
    table: &Arc<GeneratorTable>,
    src: &str,
    resolve: &dyn Fn(&str) -> Option<Poly<C>>,
) -> AlgResult<Poly<C>> {
    let mut p = Parser { s: src.as_bytes(), i: 0, table, resolve };
    let v = p.expr()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a, C: Coeff> {
    s: &'a [u8],
    i: usize,
    table: &'a Arc<GeneratorTable>,
    resolve: &'a dyn Fn(&str) -> Option<Poly<C>>,
}

impl<C: Coeff> Parser<'_, C> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at offset {}", self.i))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> AlgResult<Poly<C>> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                self.product()?.neg()
            }
            Some(b'+') => {
                self.i += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = acc.add(&self.product()?);
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = acc.sub(&self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> AlgResult<Poly<C>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.i += 1;
                    let d = self.integer()?;
                    let q = Rat::new(BigInt::from(1), d);
                    let c = C::from_rat(&q).ok_or_else(|| self.err("divisor not invertible"))?;
                    acc = acc.scale(&c);
                }
                Some(b'(') => acc = acc.mul(&self.power()?),
                Some(c) if c.is_ascii_alphabetic() => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> AlgResult<Poly<C>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let neg = if self.peek() == Some(b'-') {
                self.i += 1;
                true
            } else {
                false
            };
            let e: u32 = self
                .integer()?
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            if neg {
                let inv = base
                    .monomial_inverse()
                    .ok_or_else(|| AlgebraError::NotAUnit(base.to_string()))?;
                return Ok(inv.pow(e));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> AlgResult<BigInt> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.i]).expect("ascii digits");
        txt.parse().map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> AlgResult<Poly<C>> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.i += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let c = C::from_rat(&Rat::from_integer(n)).ok_or_else(|| self.err("bad constant"))?;
                Ok(Poly::constant(self.table, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.i;
                while self.i < self.s.len()
                    && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_' || self.s[self.i] == b'\'')
                {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).expect("ascii");
                if let Some(i) = self.table.index(name) {
                    return Ok(Poly::gen(self.table, i));
                }
                (self.resolve)(name).ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
            }
            _ => Err(self.err("expected a factor")),
        }
    }
}

/// Parse a rational number such as `-3/7`.
pub fn parse_rat(src: &str) -> AlgResult<Rat> {
    let s = src.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| AlgebraError::Parse(format!("bad rational `{src}`")))?;
    let d: BigInt = d.parse().map_err(|_| AlgebraError::Parse(format!("bad rational `{src}`")))?;
    if d == BigInt::from(0) {
        return Err(AlgebraError::DivisionByZero);
    }
    Ok(Rat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let t = GeneratorTable::plain(&[("b2", 2), ("b4", 4), ("d", 4)]);
        let p: Poly<Rat> = parse_poly(&t, "1/5*(11*b2^2 - 117*b4 - 88*d)").unwrap();
        assert_eq!(p.to_string(), "11/5*b2^2 - 117/5*b4 - 88/5*d");
        let back: Poly<Rat> = parse_poly(&t, &p.to_string()).unwrap();
        assert_eq!(back, p);
        assert!(parse_poly::<Rat>(&t, "b2 + zz").is_err());
        assert!(parse_poly::<Rat>(&t, "(b2").is_err());
    }
}

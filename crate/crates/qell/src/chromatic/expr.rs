//! Unexpanded expressions over A, so that large powers such as Δⁿ are only
//! ever formed modulo a truncation ideal.

use crate::exact_algebra::{AlgResult, AlgebraError, Poly, Rat};
use crate::rings::A;
use crate::weierstrass::WeierstrassCurve;
use num_bigint::BigInt;
use std::fmt;
use std::sync::LazyLock;

/// Leaves with at most this many terms are multiplied out eagerly.
const FOLD_LIMIT: usize = 64;

/// An element of A as a tree of sums, products and powers.
#[derive(Clone, Debug)]
pub enum Expr {
    Leaf(Poly<Rat>),
    Add(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

fn a(name: &str) -> Poly<Rat> {
    Poly::var(&A, name).expect("generator of A")
}

/// x₀ = a₃ + a₁a₂.
pub static X0: LazyLock<Poly<Rat>> = LazyLock::new(|| a("a3").add(&a("a1").mul(&a("a2"))));

/// x₁ = x₀² + a₁²a₄ + a₁²a₂².
pub static X1: LazyLock<Poly<Rat>> = LazyLock::new(|| {
    let a1sq = a("a1").pow(2);
    X0.pow(2).add(&a1sq.mul(&a("a4"))).add(&a1sq.mul(&a("a2").pow(2)))
});

/// x₂ = Δ.
pub static X2: LazyLock<Poly<Rat>> = LazyLock::new(|| {
    WeierstrassCurve::new(["a1", "a2", "a3", "a4", "a6"].map(a)).discriminant()
});

impl Expr {
    pub fn leaf(p: Poly<Rat>) -> Self {
        Expr::Leaf(p)
    }

    pub fn int(n: i64) -> Self {
        Expr::Leaf(Poly::from_int(&A, n))
    }

    /// A generator of A or one of the names x0, x1, x2, Delta.
    pub fn named(name: &str) -> AlgResult<Self> {
        Ok(Expr::Leaf(match name {
            "x0" => X0.clone(),
            "x1" => X1.clone(),
            "x2" | "Delta" | "Δ" => X2.clone(),
            _ => Poly::var(&A, name)?,
        }))
    }

    pub fn parse(src: &str) -> AlgResult<Self> {
        let mut p = Parser { s: src.as_bytes(), i: 0 };
        let e = p.sum()?;
        p.ws();
        if p.i != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    fn as_leaf(&self) -> Option<&Poly<Rat>> {
        match self {
            Expr::Leaf(p) => Some(p),
            _ => None,
        }
    }

    pub fn add(self, o: Expr) -> Self {
        match (self.as_leaf(), o.as_leaf()) {
            (Some(x), Some(y)) => Expr::Leaf(x.add(y)),
            _ => Expr::Add(Box::new(self), Box::new(o)),
        }
    }

    pub fn neg(self) -> Self {
        match self {
            Expr::Leaf(p) => Expr::Leaf(p.neg()),
            e => Expr::Neg(Box::new(e)),
        }
    }

    pub fn sub(self, o: Expr) -> Self {
        self.add(o.neg())
    }

    pub fn mul(self, o: Expr) -> Self {
        match (self.as_leaf(), o.as_leaf()) {
            (Some(x), Some(y)) if x.len().min(y.len()) <= 1 || x.len() * y.len() <= FOLD_LIMIT => {
                Expr::Leaf(x.mul(y))
            }
            _ => Expr::Mul(Box::new(self), Box::new(o)),
        }
    }

    pub fn pow(self, n: u64) -> Self {
        match self.as_leaf() {
            _ if n == 0 => Expr::int(1),
            _ if n == 1 => self,
            Some(p) if p.len() <= 1 => Expr::Leaf(p.pow(n as u32)),
            _ => Expr::Pow(Box::new(self), n),
        }
    }

    /// The weight, if the expression is homogeneous.
    pub fn weight(&self) -> AlgResult<Option<i64>> {
        let both = |x: Option<i64>, y: Option<i64>, f: fn(i64, i64) -> i64| match (x, y) {
            (Some(x), Some(y)) => Some(f(x, y)),
            (None, y) => y,
            (x, None) => x,
        };
        Ok(match self {
            Expr::Leaf(p) => p.weight()?,
            Expr::Neg(e) => e.weight()?,
            Expr::Pow(e, n) => e.weight()?.map(|w| w * *n as i64),
            Expr::Mul(x, y) => match (x.weight()?, y.weight()?) {
                (Some(u), Some(v)) => Some(u + v),
                _ => None,
            },
            Expr::Add(x, y) => {
                let (u, v) = (x.weight()?, y.weight()?);
                if let (Some(p), Some(q)) = (u, v) {
                    if p != q {
                        return Err(AlgebraError::MixedWeight);
                    }
                }
                both(u, v, |p, _| p)
            }
        })
    }

    /// Full expansion; only sensible for small expressions.
    pub fn expand(&self) -> Poly<Rat> {
        match self {
            Expr::Leaf(p) => p.clone(),
            Expr::Add(x, y) => x.expand().add(&y.expand()),
            Expr::Neg(x) => x.expand().neg(),
            Expr::Mul(x, y) => x.expand().mul(&y.expand()),
            Expr::Pow(x, n) => x.expand().pow(*n as u32),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Leaf(p) if p.len() <= 1 => write!(f, "{p}"),
            Expr::Leaf(p) => write!(f, "({p})"),
            Expr::Add(x, y) => write!(f, "{x} + {y}"),
            Expr::Neg(x) => write!(f, "-({x})"),
            Expr::Mul(x, y) => write!(f, "({x})*({y})"),
            Expr::Pow(x, n) => write!(f, "({x})^{n}"),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at byte {}", self.i))
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

    fn sum(&mut self) -> AlgResult<Expr> {
        let mut e = self.product()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.i += 1;
            let t = self.product()?;
            e = if c == b'+' { e.add(t) } else { e.sub(t) };
        }
        Ok(e)
    }

    fn product(&mut self) -> AlgResult<Expr> {
        let mut e = self.unary()?;
        while self.peek() == Some(b'*') {
            self.i += 1;
            e = e.mul(self.unary()?);
        }
        Ok(e)
    }

    fn unary(&mut self) -> AlgResult<Expr> {
        if self.peek() == Some(b'-') {
            self.i += 1;
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let n = self.number()?;
            let n: u64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn number(&mut self) -> AlgResult<BigInt> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected a number"));
        }
        let text = std::str::from_utf8(&self.s[start..self.i]).expect("ascii digits");
        text.parse().map_err(|_| self.err("bad number"))
    }

    fn atom(&mut self) -> AlgResult<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(Expr::Leaf(Poly::constant(&A, Rat::from_integer(n))))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).expect("ascii identifier");
                Expr::named(name)
            }
            _ => Err(self.err("expected an operand")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::parse_poly;

    #[test]
    fn parses_and_expands() {
        let e = Expr::parse("a1^2*x0 - 3*(a2 + a4)").unwrap();
        let p = parse_poly::<Rat>(&A, "a1^2*a3 + a1^3*a2 - 3*a2 - 3*a4").unwrap();
        assert_eq!(e.expand(), p);
        assert_eq!(Expr::parse("x2^3").unwrap().weight().unwrap(), Some(36));
        assert!(matches!(Expr::parse("x2^3").unwrap(), Expr::Pow(_, 3)));
        assert!(Expr::parse("a1 + a2").unwrap().weight().is_err());
        assert!(Expr::parse("a1 +").is_err());
        assert!(Expr::parse("a7").is_err());
    }
}

//! Recursive-descent reader for polynomial expressions.
//!
//! Accepts sums of products such as `2*sqrt2*x^(3/2) - x` or
//! `h^2*t^(1/2)*eps + (1+h)^2`. Variables are resolved by the target ring.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial parse error at byte {pos}: {msg}")]
pub struct PolyParseError {
    pub pos: usize,
    pub msg: String,
}

/// What a ring has to provide to be the target of the reader.
pub trait PolyRing: Clone {
    fn from_int(k: i64) -> Self;
    /// `name^(halves/2)`; rings reject variables or exponents they do not support.
    fn var_pow(name: &str, halves: i32) -> Result<Self, String>;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
}

pub fn parse_poly<R: PolyRing>(src: &str) -> Result<R, PolyParseError> {
    let mut p = Parser { s: src.as_bytes(), i: 0 };
    let v = p.sum::<R>()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyParseError {
        PolyParseError { pos: self.i, msg: msg.to_string() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn sum<R: PolyRing>(&mut self) -> Result<R, PolyParseError> {
        let mut neg = false;
        if self.eat(b'-') {
            neg = true;
        } else {
            self.eat(b'+');
        }
        let t = self.term::<R>()?;
        let mut acc = if neg { t.ring_neg() } else { t };
        loop {
            if self.eat(b'+') {
                acc = acc.ring_add(&self.term::<R>()?);
            } else if self.eat(b'-') {
                acc = acc.ring_add(&self.term::<R>()?.ring_neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<R: PolyRing>(&mut self) -> Result<R, PolyParseError> {
        let mut acc = self.factor::<R>()?;
        while self.eat(b'*') {
            acc = acc.ring_mul(&self.factor::<R>()?);
        }
        Ok(acc)
    }

    fn int(&mut self) -> Result<i64, PolyParseError> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse()
            .map_err(|_| PolyParseError { pos: start, msg: "expected integer".into() })
    }

    /// Exponent in half-units: `3`, `-1`, `(3/2)`, `(-1/2)`.
    fn exponent(&mut self) -> Result<i32, PolyParseError> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let p = self.int()? as i32;
            let halves = if self.eat(b'/') {
                if self.int()? != 2 {
                    return Err(self.err("only halves are supported as fractional exponents"));
                }
                p
            } else {
                2 * p
            };
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            Ok(if neg { -halves } else { halves })
        } else {
            let neg = self.eat(b'-');
            let p = 2 * self.int()? as i32;
            Ok(if neg { -p } else { p })
        }
    }

    fn factor<R: PolyRing>(&mut self) -> Result<R, PolyParseError> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let inner = self.sum::<R>()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.int_power(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.int()?;
                self.int_power(R::from_int(k))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while self.i < self.s.len()
                    && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_')
                {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).unwrap().to_string();
                let halves = if self.eat(b'^') { self.exponent()? } else { 2 };
                R::var_pow(&name, halves).map_err(|m| PolyParseError { pos: start, msg: m })
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }

    fn int_power<R: PolyRing>(&mut self, base: R) -> Result<R, PolyParseError> {
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = self.int()?;
        let mut acc = R::from_int(1);
        for _ in 0..e {
            acc = acc.ring_mul(&base);
        }
        Ok(acc)
    }
}

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// An element `a + b√2 + c√3 + d√6` of ℤ[√2, √3].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraicNumber {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl AlgebraicNumber {
    pub const ZERO: Self = Self::new(0, 0, 0, 0);
    pub const ONE: Self = Self::new(1, 0, 0, 0);
    pub const SQRT2: Self = Self::new(0, 1, 0, 0);
    pub const SQRT3: Self = Self::new(0, 0, 1, 0);
    pub const SQRT6: Self = Self::new(0, 0, 0, 1);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub const fn int(a: i64) -> Self {
        Self::new(a, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0 && self.c == 0 && self.d == 0
    }

    /// The integer value, if the number has no irrational part.
    pub fn as_int(&self) -> Option<i64> {
        self.is_rational().then_some(self.a)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    /// The Galois conjugate `√2 ↦ -√2`.
    pub fn conj2(&self) -> Self {
        Self::new(self.a, -self.b, self.c, -self.d)
    }

    /// The Galois conjugate `√3 ↦ -√3`.
    pub fn conj3(&self) -> Self {
        Self::new(self.a, self.b, -self.c, -self.d)
    }

    /// Field norm down to ℚ; always an integer here.
    pub fn norm(&self) -> i64 {
        let p = *self * self.conj2() * self.conj3() * self.conj2().conj3();
        debug_assert!(p.is_rational());
        p.a
    }

    /// Exact division by an integer.
    pub fn div_int(&self, k: i64) -> Option<Self> {
        if k == 0 {
            return None;
        }
        let all = [self.a, self.b, self.c, self.d];
        if all.iter().any(|v| v % k != 0) {
            return None;
        }
        Some(Self::new(self.a / k, self.b / k, self.c / k, self.d / k))
    }

    /// Exact division by another number, via the norm.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let co = other.conj2() * other.conj3() * other.conj2().conj3();
        (*self * co).div_int(other.norm())
    }
}

impl Add for AlgebraicNumber {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl AddAssign for AlgebraicNumber {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for AlgebraicNumber {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for AlgebraicNumber {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1)
    }
}

impl Mul for AlgebraicNumber {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let (e, f, g, h) = (o.a, o.b, o.c, o.d);
        // √2√3 = √6, √2√6 = 2√3, √3√6 = 3√2, √6² = 6
        Self::new(
            a * e + 2 * b * f + 3 * c * g + 6 * d * h,
            a * f + b * e + 3 * c * h + 3 * d * g,
            a * g + c * e + 2 * b * h + 2 * d * f,
            a * h + d * e + b * g + c * f,
        )
    }
}

impl From<i64> for AlgebraicNumber {
    fn from(v: i64) -> Self {
        Self::int(v)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [(self.a, ""), (self.b, "sqrt2"), (self.c, "sqrt3"), (self.d, "sqrt6")];
        let mut first = true;
        for (k, name) in parts {
            if k == 0 {
                continue;
            }
            if !first {
                f.write_str(if k < 0 { "-" } else { "+" })?;
            } else if k < 0 {
                f.write_str("-")?;
            }
            let m = k.abs();
            match (m, name.is_empty()) {
                (_, true) => write!(f, "{m}")?,
                (1, false) => f.write_str(name)?,
                _ => write!(f, "{m}*{name}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::parse::{parse_poly, PolyParseError, PolyRing};
use super::{AlgebraicNumber, BiPoly, RingError};

/// Laurent polynomial in `x^{1/2}` with coefficients in ℤ[√2, √3].
///
/// Keys are exponents of `x` counted in halves, so `x^{3/2}` has key 3.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, AlgebraicNumber>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(k: i64) -> Self {
        Self::constant(AlgebraicNumber::int(k))
    }

    pub fn constant(c: AlgebraicNumber) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·x^{halves/2}`.
    pub fn monomial(c: AlgebraicNumber, halves: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(halves, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(AlgebraicNumber::ONE, 2)
    }

    pub fn sqrt_x() -> Self {
        Self::monomial(AlgebraicNumber::ONE, 1)
    }

    pub fn x_pow(k: i32) -> Self {
        Self::monomial(AlgebraicNumber::ONE, 2 * k)
    }

    pub fn add_term(&mut self, halves: i32, c: AlgebraicNumber) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(halves).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&halves);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, AlgebraicNumber)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn coeff(&self, halves: i32) -> AlgebraicNumber {
        self.terms.get(&halves).copied().unwrap_or_default()
    }

    pub fn scale(&self, c: AlgebraicNumber) -> Self {
        let mut out = Self::zero();
        for (k, v) in self.terms() {
            out.add_term(k, v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The bar involution `x^{1/2} ↦ x^{-1/2}`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&k, &v)| (-k, v)).collect() }
    }

    /// Value at `x = 1`.
    pub fn eval_one(&self) -> AlgebraicNumber {
        self.terms.values().fold(AlgebraicNumber::ZERO, |acc, &v| acc + v)
    }

    pub fn has_integral_exponents(&self) -> bool {
        self.terms.keys().all(|k| k % 2 == 0)
    }

    /// If the polynomial is `c·x^{k/2}`, returns `(k, c)`.
    pub fn as_monomial(&self) -> Option<(i32, AlgebraicNumber)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Exact division of every coefficient by an algebraic number.
    pub fn div_scalar(&self, c: &AlgebraicNumber) -> Option<Self> {
        let mut out = Self::zero();
        for (k, v) in self.terms() {
            out.add_term(k, v.div_exact(c)?);
        }
        Some(out)
    }

    fn rational_coeffs(&self) -> Result<Vec<(i32, i64)>, RingError> {
        self.terms()
            .map(|(k, v)| v.as_int().map(|c| (k, c)).ok_or(RingError::NonIntegralCoefficient))
            .collect()
    }

    /// Substitution `x ↦ h²t`, `x^{1/2} ↦ h·t^{1/2}`.
    pub fn subst_h2t(&self) -> Result<BiPoly, RingError> {
        let mut out = BiPoly::zero();
        for (k, c) in self.rational_coeffs()? {
            out.add_term(k, k, false, c);
        }
        Ok(out)
    }

    /// Substitution `x ↦ -ht`; half-integral powers have no image.
    pub fn subst_neg_ht(&self) -> Result<BiPoly, RingError> {
        if !self.has_integral_exponents() {
            return Err(RingError::HalfPowerResidue);
        }
        let mut out = BiPoly::zero();
        for (k, c) in self.rational_coeffs()? {
            let e = k / 2;
            let sign = if e % 2 == 0 { 1 } else { -1 };
            out.add_term(k, e, false, sign * c);
        }
        Ok(out)
    }

    /// Substitution `x ↦ t`, `x^{1/2} ↦ t^{1/2}` into the `h`-free part of [`BiPoly`].
    pub fn subst_t(&self) -> Result<BiPoly, RingError> {
        let mut out = BiPoly::zero();
        for (k, c) in self.rational_coeffs()? {
            out.add_term(k, 0, false, c);
        }
        Ok(out)
    }

    pub fn parse(src: &str) -> Result<Self, PolyParseError> {
        parse_poly(src)
    }
}

impl PolyRing for LaurentPoly {
    fn from_int(k: i64) -> Self {
        Self::int(k)
    }

    fn var_pow(name: &str, halves: i32) -> Result<Self, String> {
        let radical = match name {
            "x" => return Ok(Self::monomial(AlgebraicNumber::ONE, halves)),
            "sqrt2" => AlgebraicNumber::SQRT2,
            "sqrt3" => AlgebraicNumber::SQRT3,
            "sqrt6" => AlgebraicNumber::SQRT6,
            _ => return Err(format!("unknown variable '{name}'")),
        };
        if halves < 0 || halves % 2 != 0 {
            return Err(format!("{name} only takes non-negative integer powers"));
        }
        Ok(Self::constant(radical).pow((halves / 2) as u32))
    }

    fn ring_add(&self, o: &Self) -> Self {
        self + o
    }

    fn ring_mul(&self, o: &Self) -> Self {
        self * o
    }

    fn ring_neg(&self) -> Self {
        -self
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, v) in o.terms() {
            out.add_term(k, v);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(AlgebraicNumber::int(-1))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (k1, v1) in self.terms() {
            for (k2, v2) in o.terms() {
                out.add_term(k1 + k2, v1 * v2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

pub(crate) fn fmt_power(f: &mut fmt::Formatter<'_>, var: &str, halves: i32) -> fmt::Result {
    match halves {
        2 => f.write_str(var),
        h if h % 2 == 0 => write!(f, "{var}^{}", h / 2),
        h => write!(f, "{var}^({h}/2)"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms().enumerate() {
            let parts = [c.a, c.b, c.c, c.d];
            let simple = parts.iter().filter(|v| **v != 0).count() <= 1;
            let negative = simple && parts.iter().any(|v| *v < 0);
            let (neg, mag) = if negative { (true, -c) } else { (false, c) };
            if neg {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let coeff = if simple { mag.to_string() } else { format!("({mag})") };
            if k == 0 {
                f.write_str(&coeff)?;
            } else {
                if mag != AlgebraicNumber::ONE {
                    write!(f, "{coeff}*")?;
                }
                fmt_power(f, "x", k)?;
            }
        }
        Ok(())
    }
}

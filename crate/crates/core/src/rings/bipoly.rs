use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::laurent::fmt_power;
use super::parse::{parse_poly, PolyParseError, PolyRing};

/// Exponent triple of a [`BiPoly`] monomial: `t` in halves, `h`, and the degree in `eps`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub t: i32,
    pub h: i32,
    pub eps: bool,
}

/// Integer polynomial in `t^{1/2}`, `h` and the formal sign `eps`.
///
/// `eps` stands for an unknown in `{0, -1}`, so products reduce with `eps² = -eps`.
/// Negative exponents are allowed so that exact quotients stay in the ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiPoly {
    terms: BTreeMap<Mono, i64>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(c: i64) -> Self {
        Self::monomial(c, 0, 0, false)
    }

    /// `c·t^{t_halves/2}·h^h·eps^{eps}`.
    pub fn monomial(c: i64, t_halves: i32, h: i32, eps: bool) -> Self {
        let mut p = Self::zero();
        p.add_term(t_halves, h, eps, c);
        p
    }

    pub fn h() -> Self {
        Self::monomial(1, 0, 1, false)
    }

    pub fn t() -> Self {
        Self::monomial(1, 2, 0, false)
    }

    pub fn eps() -> Self {
        Self::monomial(1, 0, 0, true)
    }

    /// `(h²t)^k` for `k ≥ 0` or negative `k`.
    pub fn h2t_pow(k: i32) -> Self {
        Self::monomial(1, 2 * k, 2 * k, false)
    }

    pub fn add_term(&mut self, t_halves: i32, h: i32, eps: bool, c: i64) {
        if c == 0 {
            return;
        }
        let key = Mono { t: t_halves, h, eps };
        let e = self.terms.entry(key).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mono, i64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn coeff(&self, t_halves: i32, h: i32, eps: bool) -> i64 {
        self.terms.get(&Mono { t: t_halves, h, eps }).copied().unwrap_or(0)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            out.add_term(m.t, m.h, m.eps, c * k);
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

    pub fn has_eps(&self) -> bool {
        self.terms.keys().any(|m| m.eps)
    }

    pub fn all_coefficients_even(&self) -> bool {
        self.terms.values().all(|c| c % 2 == 0)
    }

    /// Specializes `h` to an integer; the result is `h`-free.
    pub fn specialize_h(&self, v: i64) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            let f = int_pow(v, m.h).expect("h specialized to zero with negative exponent");
            out.add_term(m.t, 0, m.eps, c * f);
        }
        out
    }

    /// Specializes `eps` to an integer.
    pub fn specialize_eps(&self, v: i64) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            out.add_term(m.t, m.h, false, if m.eps { c * v } else { c });
        }
        out
    }

    /// Splits as `p0 + eps·p1`.
    fn split_eps(&self) -> (Self, Self) {
        let (mut p0, mut p1) = (Self::zero(), Self::zero());
        for (m, c) in self.terms() {
            let target = if m.eps { &mut p1 } else { &mut p0 };
            target.add_term(m.t, m.h, false, c);
        }
        (p0, p1)
    }

    fn shift(&self, dt: i32, dh: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (Mono { t: m.t + dt, h: m.h + dh, eps: m.eps }, c))
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    ///
    /// The divisor must be free of `eps`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() || d.has_eps() {
            return None;
        }
        let (n0, n1) = self.split_eps();
        let q0 = div_eps_free(&n0, d)?;
        let q1 = div_eps_free(&n1, d)?;
        Some(&q0 + &(&q1 * &Self::eps()))
    }

    pub fn parse(src: &str) -> Result<Self, PolyParseError> {
        parse_poly(src)
    }
}

fn int_pow(v: i64, e: i32) -> Option<i64> {
    if e >= 0 {
        Some(v.pow(e as u32))
    } else if v == 1 || v == -1 {
        Some(v.pow(e.unsigned_abs()))
    } else {
        None
    }
}

fn min_exponents(p: &BiPoly) -> (i32, i32) {
    let mt = p.terms.keys().map(|m| m.t).min().unwrap_or(0);
    let mh = p.terms.keys().map(|m| m.h).min().unwrap_or(0);
    (mt, mh)
}

/// Long division in ℤ[t^{1/2}, h] after clearing monomial content.
fn div_eps_free(n: &BiPoly, d: &BiPoly) -> Option<BiPoly> {
    if n.is_zero() {
        return Some(BiPoly::zero());
    }
    let (nt, nh) = min_exponents(n);
    let (dt, dh) = min_exponents(d);
    let n = n.shift(-nt, -nh);
    let d = d.shift(-dt, -dh);
    let (lead, lc) = d.terms.iter().next_back().map(|(m, c)| (*m, *c))?;
    let mut r = n;
    let mut q = BiPoly::zero();
    while let Some((&m, &c)) = r.terms.iter().next_back() {
        if m.t < lead.t || m.h < lead.h || c % lc != 0 {
            return None;
        }
        let qt = BiPoly::monomial(c / lc, m.t - lead.t, m.h - lead.h, false);
        r = &r - &(&qt * &d);
        q = &q + &qt;
    }
    Some(q.shift(nt - dt, nh - dh))
}

impl PolyRing for BiPoly {
    fn from_int(k: i64) -> Self {
        Self::int(k)
    }

    fn var_pow(name: &str, halves: i32) -> Result<Self, String> {
        match name {
            "t" => Ok(Self::monomial(1, halves, 0, false)),
            "h" if halves % 2 == 0 => Ok(Self::monomial(1, 0, halves / 2, false)),
            "eps" if halves >= 0 && halves % 2 == 0 => Ok(Self::eps().pow((halves / 2) as u32)),
            "h" | "eps" => Err(format!("{name} only takes integer powers")),
            _ => Err(format!("unknown variable '{name}'")),
        }
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

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in o.terms() {
            out.add_term(m.t, m.h, m.eps, c);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        self + &(-o)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(-1)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in o.terms() {
                // eps² = -eps
                let sign = if m1.eps && m2.eps { -1 } else { 1 };
                out.add_term(m1.t + m2.t, m1.h + m2.h, m1.eps || m2.eps, sign * c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, o: BiPoly) -> BiPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if c < 0 {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if c.abs() != 1 || (m.t == 0 && m.h == 0 && !m.eps) {
                factors.push(c.abs().to_string());
            }
            if m.eps {
                factors.push("eps".into());
            }
            if m.h != 0 {
                factors.push(Power("h", 2 * m.h).to_string());
            }
            if m.t != 0 {
                factors.push(Power("t", m.t).to_string());
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

struct Power(&'static str, i32);

impl fmt::Display for Power {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_power(f, self.0, self.1)
    }
}

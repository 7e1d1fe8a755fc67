//! The Iwahori–Hecke algebra with quadratic relation `(T_s - x)(T_s + 1) = 0`,
//! over Laurent polynomials in `x^{1/2}`.

mod chars;
mod kl;
mod lemma_t;

pub use chars::{CharSpec, CharTraceError};
pub use kl::KLTable;
pub use lemma_t::{LemmaTCase, LemmaTInstance};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::braid::{BraidElt, BraidMonoid, CompletedBraidElt};
use crate::coxeter::{CoxeterSystem, WeylElt};
use crate::rings::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("{0} is not rationally smooth")]
    NotSmooth(String),
    #[error("image is not a scalar matrix")]
    NotScalar,
    #[error(transparent)]
    Trace(#[from] CharTraceError),
}

/// An element `Σ c_w T_w` of the Hecke algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HeckeElt {
    coeffs: BTreeMap<WeylElt, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, w: WeylElt, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(w).or_default();
        *e = &*e + c;
        if e.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    pub fn coeff(&self, w: WeylElt) -> LaurentPoly {
        self.coeffs.get(&w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (WeylElt, &LaurentPoly)> {
        self.coeffs.iter().map(|(&w, c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in o.terms() {
            out.add_term(w, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&LaurentPoly::int(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (w, v) in self.terms() {
            out.add_term(w, &(v * c));
        }
        out
    }
}

#[derive(Clone, Copy)]
pub struct HeckeAlgebra<'a> {
    sys: &'a CoxeterSystem,
}

impl<'a> HeckeAlgebra<'a> {
    pub fn new(sys: &'a CoxeterSystem) -> Self {
        Self { sys }
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.sys
    }

    pub fn one(&self) -> HeckeElt {
        self.t(self.sys.identity())
    }

    pub fn t(&self, w: WeylElt) -> HeckeElt {
        let mut h = HeckeElt::zero();
        h.add_term(w, &LaurentPoly::one());
        h
    }

    /// `T̲_w = Σ_{v ≤ w} T_v`.
    pub fn t_bar(&self, w: WeylElt) -> HeckeElt {
        let mut h = HeckeElt::zero();
        for &v in self.sys.lower_interval(w) {
            h.add_term(v, &LaurentPoly::one());
        }
        h
    }

    /// Right multiplication by `T_s`.
    pub fn mul_gen(&self, h: &HeckeElt, s: u8) -> HeckeElt {
        let x = LaurentPoly::x();
        let xm1 = &x - &LaurentPoly::one();
        let mut out = HeckeElt::zero();
        for (w, c) in h.terms() {
            let ws = self.sys.mul_gen(w, s);
            if ws.length() > w.length() {
                out.add_term(ws, c);
            } else {
                out.add_term(w, &(&xm1 * c));
                out.add_term(ws, &(&x * c));
            }
        }
        out
    }

    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (v, q) in b.terms() {
            let prod = self.sys.word(v).iter().fold(a.clone(), |acc, &s| self.mul_gen(&acc, s));
            out = out.add(&prod.scale(q));
        }
        out
    }

    /// `T_s⁻¹ = x⁻¹ T_s + (x⁻¹ - 1) T_1`.
    pub fn t_gen_inverse(&self, s: u8) -> HeckeElt {
        let xi = LaurentPoly::x_pow(-1);
        let mut h = HeckeElt::zero();
        h.add_term(self.sys.generator(s), &xi);
        h.add_term(self.sys.identity(), &(&xi - &LaurentPoly::one()));
        h
    }

    /// `T_w⁻¹`.
    pub fn t_inverse(&self, w: WeylElt) -> HeckeElt {
        self.sys.word(w).iter().rev().fold(self.one(), |acc, &s| self.mul(&acc, &self.t_gen_inverse(s)))
    }

    /// Image of a positive braid: `T_{w₁} ⋯ T_{w_k}` over its normal form.
    pub fn eval_braid(&self, b: &BraidElt) -> HeckeElt {
        let letters = BraidMonoid::new(self.sys).letters(b);
        letters.iter().fold(self.one(), |acc, &s| self.mul_gen(&acc, s))
    }

    /// The monoid morphism sending plain `w` to `T_w` and underlined `w` to `T̲_w`.
    pub fn eval_completed(&self, c: &CompletedBraidElt) -> HeckeElt {
        c.tokens().iter().fold(self.one(), |acc, tok| {
            if tok.underlined {
                self.mul(&acc, &self.t_bar(tok.elt))
            } else {
                self.sys.word(tok.elt).iter().fold(acc, |a, &s| self.mul_gen(&a, s))
            }
        })
    }

    /// `P_w(x) * T[word]` summands, `T[]` for the identity.
    pub fn format(&self, h: &HeckeElt) -> String {
        if h.is_zero() {
            return "0".into();
        }
        h.terms()
            .map(|(w, c)| {
                let word = self.sys.format_word(self.sys.word(w));
                if *c == LaurentPoly::one() {
                    format!("T[{word}]")
                } else {
                    format!("({c}) * T[{word}]")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_relation() {
        let a2 = CoxeterSystem::preset("A2").unwrap();
        let h = HeckeAlgebra::new(&a2);
        let ts = h.t(a2.generator(0));
        let sq = h.mul(&ts, &ts);
        let expected = ts.scale(&LaurentPoly::parse("x-1").unwrap()).add(&h.one().scale(&LaurentPoly::x()));
        assert_eq!(sq, expected);
    }

    #[test]
    fn inverse_of_longest() {
        let g2 = CoxeterSystem::preset("G2").unwrap();
        let h = HeckeAlgebra::new(&g2);
        let w0 = g2.longest();
        assert_eq!(h.mul(&h.t(w0), &h.t_inverse(w0)), h.one());
    }

    #[test]
    fn underlined_generator_squares() {
        let b2 = CoxeterSystem::preset("B2").unwrap();
        let h = HeckeAlgebra::new(&b2);
        let sb = h.t_bar(b2.generator(0));
        assert_eq!(h.mul(&sb, &sb), sb.scale(&LaurentPoly::parse("x+1").unwrap()));
    }

    #[test]
    fn eval_completed_is_multiplicative() {
        let a2 = CoxeterSystem::preset("A2").unwrap();
        let m = BraidMonoid::new(&a2);
        let h = HeckeAlgebra::new(&a2);
        let a = m.parse_completed("_st s").unwrap();
        let b = m.parse_completed("t _s").unwrap();
        assert_eq!(h.eval_completed(&a.concat(&b)), h.mul(&h.eval_completed(&a), &h.eval_completed(&b)));
    }
}

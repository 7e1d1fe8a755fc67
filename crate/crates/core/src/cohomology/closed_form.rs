use super::{CohomologyError, GradedChar, TypeData};
use crate::braid::CompletedBraidElt;
use crate::hecke::{HeckeAlgebra, HeckeElt};
use crate::rings::{BiPoly, LaurentPoly, RingError};

impl TypeData {
    pub fn hecke(&self) -> HeckeAlgebra<'_> {
        HeckeAlgebra::new(&self.sys)
    }

    /// Per tracked symbol, `Σ num_i Tr(h F | χ_i) / den` as a polynomial in `x^{1/2}`.
    pub fn closed_form_traces(&self, h: &HeckeElt) -> Result<Vec<(&'static str, LaurentPoly)>, CohomologyError> {
        let twisted = self.ty.is_twisted();
        self.closed_form
            .iter()
            .map(|row| {
                let mut acc = LaurentPoly::zero();
                for &(c, i) in &row.terms {
                    acc = &acc + &self.chars[i].trace(&self.sys, h, twisted).scale(c);
                }
                let q = acc.div_scalar(&row.den.into()).ok_or(RingError::NonIntegralCoefficient)?;
                Ok((row.symbol, q))
            })
            .collect()
    }

    /// `H(y)` for a product of underlined elements, from character traces at `x = h²t`.
    pub fn closed_form_h(&self, c: &CompletedBraidElt) -> Result<GradedChar, CohomologyError> {
        if !c.is_fully_underlined() {
            return Err(CohomologyError::NotFullyUnderlined);
        }
        let h = self.hecke().eval_completed(c);
        let mut out = GradedChar::zero();
        for (sym, p) in self.closed_form_traces(&h)? {
            out.add_to(sym, &p.subst_h2t()?);
        }
        Ok(out)
    }

    /// The value that `H(y)` should take at `h = -1`: the closed-form combination
    /// with `x^{1/2} = h t^{1/2}` and `h = -1`, valid for every `y`.
    pub fn hm1_prediction(&self, c: &CompletedBraidElt) -> Result<GradedChar, CohomologyError> {
        let h = self.hecke().eval_completed(c);
        let mut out = GradedChar::zero();
        for (sym, p) in self.closed_form_traces(&h)? {
            out.add_to(sym, &p.subst_h2t()?.specialize_h(-1));
        }
        Ok(out)
    }

    /// Multiplicity of the trivial character: `Π (h²t)^{l(w)}` over plain tokens and the
    /// Poincaré polynomial `Σ_{v ≤ w} (h²t)^{l(v)}` over underlined ones.
    pub fn id_component(&self, c: &CompletedBraidElt) -> BiPoly {
        c.tokens().iter().fold(BiPoly::one(), |acc, tok| {
            let factor = if tok.underlined {
                self.sys
                    .lower_interval(tok.elt)
                    .iter()
                    .fold(BiPoly::zero(), |p, v| &p + &BiPoly::h2t_pow(v.length() as i32))
            } else {
                BiPoly::h2t_pow(tok.elt.length() as i32)
            };
            &acc * &factor
        })
    }

    /// Multiplicity of the Steinberg character: `h^{l(y)}` for plain `y`, zero as soon
    /// as an underlined token occurs.
    pub fn st_component(&self, c: &CompletedBraidElt) -> BiPoly {
        if c.has_underlined() {
            BiPoly::zero()
        } else {
            BiPoly::monomial(1, 0, c.length() as i32, false)
        }
    }

    /// `H(s^n) = (h²t)^n m(ρ, (R₁+R_s)/2) + h^n m(ρ, (R₁-R_s)/2)`, split types only.
    pub fn hs_formula(&self, s: u8, n: u32) -> Result<GradedChar, CohomologyError> {
        if self.ty.is_twisted() {
            return Err(CohomologyError::NotSplit);
        }
        let hk = self.hecke();
        let at_one = self.closed_form_traces(&hk.one())?;
        let at_s = self.closed_form_traces(&hk.t(self.sys.generator(s)))?;
        let mut out = GradedChar::zero();
        for ((sym, r1), (_, rs)) in at_one.into_iter().zip(at_s) {
            let (r1, rs) = (r1.eval_one(), rs.eval_one());
            let plus = (r1 + rs).div_int(2).and_then(|v| v.as_int()).ok_or(RingError::NonIntegralCoefficient)?;
            let minus = (r1 - rs).div_int(2).and_then(|v| v.as_int()).ok_or(RingError::NonIntegralCoefficient)?;
            out.add_to(sym, &BiPoly::h2t_pow(n as i32).scale(plus));
            out.add_to(sym, &BiPoly::monomial(minus, 0, n as i32, false));
        }
        Ok(out)
    }
}

/// Splits `f_m = (h²t)^m H_s + h^m H_i` from `f₀` and `f₁`.
pub fn smb_solve(f0: &GradedChar, f1: &GradedChar) -> Result<(GradedChar, GradedChar), CohomologyError> {
    let h = BiPoly::h();
    let h2t = BiPoly::h2t_pow(1);
    let d = &h2t - &h;
    let hs = f1.sub(&f0.scale(&h)).div_exact(&d).ok_or(RingError::DivisionNotExact)?;
    let hi = f0.scale(&h2t).sub(f1).div_exact(&d).ok_or(RingError::DivisionNotExact)?;
    Ok((hs, hi))
}

/// `f_{m+2} = (h + h²t) f_{m+1} - h³t f_m`.
pub fn smb_next(f_m: &GradedChar, f_m1: &GradedChar) -> GradedChar {
    let a = &BiPoly::h() + &BiPoly::h2t_pow(1);
    let b = BiPoly::monomial(1, 2, 3, false);
    f_m1.scale(&a).sub(&f_m.scale(&b))
}

use super::{HeckeAlgebra, HeckeElt, HeckeError, KLTable};
use crate::coxeter::WeylElt;
use crate::rings::LaurentPoly;

/// How `T̲_w T̲_s` decomposes for a rationally smooth `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaTCase {
    /// `ws < w`: the product is `(x+1) T̲_w`.
    Descent,
    /// `s ≰ w`: the product is `T̲_{ws}`.
    NotBelow,
    /// `s < w < ws` with a unique `y` such that `ys < y < w` and `l(y) = l(w) - 1`:
    /// the product is `T̲_{ws} + x T̲_y`.
    Extension { y: WeylElt },
    /// Anything else; `ws` is then expected to be singular.
    Singular,
}

/// A case together with both sides of the identity it asserts.
#[derive(Clone, Debug)]
pub struct LemmaTInstance {
    pub case: LemmaTCase,
    /// `T̲_w T̲_s`, computed by multiplication.
    pub lhs: HeckeElt,
    /// The right-hand side predicted by the case.
    pub rhs: HeckeElt,
    pub ws_smooth: bool,
}

impl LemmaTInstance {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl HeckeAlgebra<'_> {
    pub fn lemma_t_case(&self, kl: &KLTable, w: WeylElt, s: u8) -> Result<LemmaTInstance, HeckeError> {
        let sys = self.system();
        if !kl.is_rationally_smooth(w) {
            return Err(HeckeError::NotSmooth(sys.format(w)));
        }
        let sg = sys.generator(s);
        let ws = sys.mul_gen(w, s);
        let lhs = self.mul(&self.t_bar(w), &self.t_bar(sg));
        let x = LaurentPoly::x();
        let ys: Vec<WeylElt> = sys
            .lower_interval(w)
            .iter()
            .copied()
            .filter(|&y| y.length() + 1 == w.length() && sys.is_right_descent(y, s))
            .collect();
        let (case, rhs) = if ws.length() < w.length() {
            (LemmaTCase::Descent, self.t_bar(w).scale(&(&x + &LaurentPoly::one())))
        } else if !sys.bruhat_leq(sg, w) {
            (LemmaTCase::NotBelow, self.t_bar(ws))
        } else if let [y] = ys[..] {
            (LemmaTCase::Extension { y }, self.t_bar(ws).add(&self.t_bar(y).scale(&x)))
        } else {
            // T̲_{ws} + x Σ_{v < w, vs < v} (T_v + T_{vs})
            let mut tail = HeckeElt::zero();
            for &v in sys.lower_interval(w) {
                if v != w && sys.is_right_descent(v, s) {
                    tail.add_term(v, &LaurentPoly::one());
                    tail.add_term(sys.mul_gen(v, s), &LaurentPoly::one());
                }
            }
            (LemmaTCase::Singular, self.t_bar(ws).add(&tail.scale(&x)))
        };
        Ok(LemmaTInstance { case, lhs, rhs, ws_smooth: kl.is_rationally_smooth(ws) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;

    #[test]
    fn b2_instances() {
        let b2 = CoxeterSystem::preset("B2").unwrap();
        let h = HeckeAlgebra::new(&b2);
        let kl = h.kl_table();
        let st = b2.from_word(&[0, 1]);
        let inst = h.lemma_t_case(&kl, st, 0).unwrap();
        assert_eq!(inst.case, LemmaTCase::Extension { y: b2.generator(0) });
        assert!(inst.holds());
        let inst = h.lemma_t_case(&kl, b2.generator(0), 1).unwrap();
        assert_eq!(inst.case, LemmaTCase::NotBelow);
        assert!(inst.holds());
    }
}

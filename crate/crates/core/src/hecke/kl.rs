use std::collections::HashMap;

use super::{HeckeAlgebra, HeckeElt};
use crate::coxeter::WeylElt;
use crate::rings::LaurentPoly;

/// Kazhdan–Lusztig polynomials `P_{y,w}` for a whole finite group, stored via
/// `D_w = Σ_y P_{y,w} T_y`.
#[derive(Clone, Debug)]
pub struct KLTable {
    d: Vec<HeckeElt>,
    index: HashMap<WeylElt, usize>,
    one: WeylElt,
}

impl KLTable {
    pub fn p(&self, y: WeylElt, w: WeylElt) -> LaurentPoly {
        self.d[self.index[&w]].coeff(y)
    }

    /// Coefficient of `x^{(l(w)-l(y)-1)/2}` in `P_{y,w}`, zero when that exponent is not integral.
    pub fn mu(&self, y: WeylElt, w: WeylElt) -> i64 {
        if y.length() >= w.length() || (w.length() - y.length()) % 2 == 0 {
            return 0;
        }
        let e = (w.length() - y.length() - 1) as i32;
        self.p(y, w).coeff(e).as_int().expect("KL polynomials have integer coefficients")
    }

    /// `D_w = Σ_y P_{y,w} T_y`.
    pub fn d_basis(&self, w: WeylElt) -> &HeckeElt {
        &self.d[self.index[&w]]
    }

    /// `P_{1,w} = 1`.
    pub fn is_rationally_smooth(&self, w: WeylElt) -> bool {
        self.p(self.one, w) == LaurentPoly::one()
    }
}

impl HeckeAlgebra<'_> {
    /// Builds `D_w` by induction on length using
    /// `D_v D_s = D_{vs} + Σ_{z < v, zs < z} μ(z,v) x^{(l(vs)-l(z))/2} D_z` for `vs > v`.
    pub fn kl_table(&self) -> KLTable {
        let sys = self.system();
        let elements: Vec<WeylElt> = sys.elements().collect();
        let index: HashMap<WeylElt, usize> = elements.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let mut table = KLTable { d: Vec::with_capacity(elements.len()), index, one: sys.identity() };
        for &w in &elements {
            if w.is_identity() {
                table.d.push(self.one());
                continue;
            }
            let s = *sys.word(w).last().unwrap();
            let v = sys.mul_gen(w, s);
            let dv = table.d_basis(v).clone();
            let mut dw = dv.add(&self.mul_gen(&dv, s));
            for &z in &elements[..table.d.len()] {
                if z.length() >= v.length() || !sys.is_right_descent(z, s) {
                    continue;
                }
                let mu = table.mu(z, v);
                if mu == 0 {
                    continue;
                }
                let e = ((w.length() - z.length()) / 2) as i32;
                let c = LaurentPoly::x_pow(e).scale(mu.into());
                dw = dw.sub(&table.d_basis(z).scale(&c));
            }
            table.d.push(dw);
        }
        table
    }
}

use thiserror::Error;

use super::{HeckeAlgebra, HeckeElt};
use crate::coxeter::{CoxeterSystem, WeylElt};
use crate::rings::{AlgebraicNumber, LaurentPoly, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharTraceError {
    #[error("image of T_pi under {0} is not a scalar")]
    NotScalar(String),
    #[error("image of T_pi under {0} is not a monomial")]
    NotMonomial(String),
    #[error("Tr(T_pi T_w F) differs from the scalar multiple at w = {0}")]
    PeriodicityFails(String),
}

/// A representation of the Hecke algebra given by generator matrices, with
/// the matrix by which the Frobenius acts on the representation space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSpec {
    pub name: String,
    pub gens: Vec<Matrix>,
    pub f: Matrix,
}

impl CharSpec {
    /// A one-dimensional character given by the images of the generators.
    pub fn linear(name: &str, values: &[LaurentPoly]) -> Self {
        Self {
            name: name.into(),
            gens: values.iter().map(|v| Matrix::scalar(1, v.clone())).collect(),
            f: Matrix::identity(1),
        }
    }

    /// The two-dimensional representation of a dihedral Hecke algebra
    /// `T_s = [[-1, 0], [c√x, x]]`, `T_t = [[x, c√x], [0, -1]]`.
    pub fn dihedral(name: &str, c: AlgebraicNumber) -> Self {
        let off = LaurentPoly::monomial(c, 1);
        let (m1, x, z) = (LaurentPoly::int(-1), LaurentPoly::x(), LaurentPoly::zero());
        let ts = Matrix::from_rows(vec![vec![m1.clone(), z.clone()], vec![off.clone(), x.clone()]]);
        let tt = Matrix::from_rows(vec![vec![x, off], vec![z, m1]]);
        Self { name: name.into(), gens: vec![ts, tt], f: Matrix::identity(2) }
    }

    /// The same representation with the Frobenius exchanging the basis vectors.
    pub fn twisted(mut self) -> Self {
        if self.dim() == 2 {
            let (o, z) = (LaurentPoly::one(), LaurentPoly::zero());
            self.f = Matrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o, z]]);
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    pub fn image_t(&self, sys: &CoxeterSystem, w: WeylElt) -> Matrix {
        sys.word(w).iter().fold(Matrix::identity(self.dim()), |acc, &s| acc.mul(&self.gens[s as usize]))
    }

    pub fn image(&self, sys: &CoxeterSystem, h: &HeckeElt) -> Matrix {
        h.terms().fold(Matrix::zero(self.dim()), |acc, (w, c)| acc.add(&self.image_t(sys, w).scale(c)))
    }

    /// `Tr(h | V)`, or `Tr(h F | V)` when `with_f` is set.
    pub fn trace(&self, sys: &CoxeterSystem, h: &HeckeElt, with_f: bool) -> LaurentPoly {
        let m = self.image(sys, h);
        if with_f {
            m.mul(&self.f).trace()
        } else {
            m.trace()
        }
    }

    pub fn central_char_w0(&self, sys: &CoxeterSystem) -> Matrix {
        self.image_t(sys, sys.longest())
    }

    /// The scalar by which `T_π = T_{w₀}²` acts.
    pub fn central_char_pi(&self, sys: &CoxeterSystem) -> Result<LaurentPoly, CharTraceError> {
        let w0 = self.central_char_w0(sys);
        w0.mul(&w0).as_scalar().ok_or_else(|| CharTraceError::NotScalar(self.name.clone()))
    }

    /// Checks `Tr(T_π T_w F) = x^k Tr(T_w F)` for every `w` and returns `k`.
    pub fn check_conj_a_hm1(&self, sys: &CoxeterSystem) -> Result<i32, CharTraceError> {
        let scalar = self.central_char_pi(sys)?;
        let (halves, c) = scalar.as_monomial().ok_or_else(|| CharTraceError::NotMonomial(self.name.clone()))?;
        if c != AlgebraicNumber::ONE || halves % 2 != 0 {
            return Err(CharTraceError::NotMonomial(self.name.clone()));
        }
        let w0 = self.central_char_w0(sys);
        let pi = w0.mul(&w0);
        for w in sys.elements() {
            let tw = self.image_t(sys, w).mul(&self.f);
            if pi.mul(&tw).trace() != &tw.trace() * &scalar {
                return Err(CharTraceError::PeriodicityFails(sys.format(w)));
            }
        }
        Ok(halves / 2)
    }

    /// Checks `Tr(T_w⁻¹ F) = bar(Tr(T_w F))`.
    pub fn check_conj_b_hm1(&self, sys: &CoxeterSystem, w: WeylElt) -> bool {
        let h = HeckeAlgebra::new(sys);
        let direct = self.trace(sys, &h.t(w), true);
        let inverse = self.trace(sys, &h.t_inverse(w), true);
        inverse == direct.bar()
    }
}

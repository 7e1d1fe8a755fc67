//! Coefficient rings: ℤ[√2, √3], Laurent polynomials in `x^{1/2}`, the
//! graded ring ℤ[t^{±1/2}, h^{±1}, eps], and small matrices.

mod algebraic;
mod bipoly;
mod laurent;
mod matrix;
mod parse;

pub use algebraic::AlgebraicNumber;
pub use bipoly::{BiPoly, Mono};
pub use laurent::LaurentPoly;
pub use matrix::Matrix;
pub use parse::{parse_poly, PolyParseError, PolyRing};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("coefficient is not an integer after substitution")]
    NonIntegralCoefficient,
    #[error("half-integral power of x has no image under x -> -ht")]
    HalfPowerResidue,
    #[error("division is not exact")]
    DivisionNotExact,
    #[error(transparent)]
    Parse(#[from] PolyParseError),
}

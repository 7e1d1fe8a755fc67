use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use super::CohomologyError;
use crate::braid::{BraidElt, BraidMonoid};
use crate::coxeter::{CoxeterSystem, DiagramAuto};
use crate::hecke::CharSpec;
use crate::rings::{AlgebraicNumber, BiPoly, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GroupType {
    A2,
    TwoA2,
    B2,
    TwoB2,
    G2,
    TwoG2,
}

impl GroupType {
    pub const ALL: [GroupType; 6] =
        [GroupType::A2, GroupType::TwoA2, GroupType::B2, GroupType::TwoB2, GroupType::G2, GroupType::TwoG2];

    pub fn name(self) -> &'static str {
        match self {
            GroupType::A2 => "A2",
            GroupType::TwoA2 => "2A2",
            GroupType::B2 => "B2",
            GroupType::TwoB2 => "2B2",
            GroupType::G2 => "G2",
            GroupType::TwoG2 => "2G2",
        }
    }

    /// File stem of the shipped table and identity suite.
    pub fn data_stem(self) -> String {
        self.name().to_lowercase()
    }

    pub fn is_twisted(self) -> bool {
        matches!(self, GroupType::TwoA2 | GroupType::TwoB2 | GroupType::TwoG2)
    }

    pub fn coxeter_preset(self) -> &'static str {
        match self {
            GroupType::A2 | GroupType::TwoA2 => "A2",
            GroupType::B2 | GroupType::TwoB2 => "B2",
            GroupType::G2 | GroupType::TwoG2 => "G2",
        }
    }

    pub fn data(self) -> &'static TypeData {
        static CELLS: [OnceLock<TypeData>; 6] =
            [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
        CELLS[self as usize].get_or_init(|| TypeData::build(self))
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupType {
    type Err = CohomologyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().trim_start_matches('^');
        GroupType::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(norm))
            .ok_or_else(|| CohomologyError::UnknownType(s.to_string()))
    }
}

/// Which central-ish element gives the periodicity `H(y P) = factor · E(H(y))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Period {
    Pi,
    W0,
}

/// One tracked symbol of the closed form: `Σ num_i Tr(· | chars[i]) / den`.
#[derive(Clone, Debug)]
pub struct ClosedFormRow {
    pub symbol: &'static str,
    pub terms: Vec<(AlgebraicNumber, usize)>,
    pub den: i64,
}

/// Everything fixed by a group type: the Coxeter system, the Frobenius, the
/// tracked unipotent symbols, characters and closed-form multiplicities.
pub struct TypeData {
    pub ty: GroupType,
    pub sys: CoxeterSystem,
    pub f: DiagramAuto,
    pub symbols: Vec<&'static str>,
    /// Table shorthands, each a sum of tracked symbols.
    pub aliases: Vec<(&'static str, Vec<&'static str>)>,
    pub period: Period,
    pub period_factor: BiPoly,
    /// Permutation of `symbols` by the Ennola involution, if it is not trivial.
    pub ennola: Option<Vec<usize>>,
    pub chars: Vec<CharSpec>,
    pub closed_form: Vec<ClosedFormRow>,
}

fn lin(name: &str, s: LaurentPoly, t: LaurentPoly) -> CharSpec {
    CharSpec::linear(name, &[s, t])
}

impl TypeData {
    fn build(ty: GroupType) -> Self {
        let sys = CoxeterSystem::preset(ty.coxeter_preset()).expect("preset exists");
        let f = if ty.is_twisted() { sys.swap_auto().expect("rank 2") } else { DiagramAuto::identity(2) };
        let x = LaurentPoly::x;
        let m1 = || LaurentPoly::int(-1);
        let id = lin("id", x(), x());
        let sgn = lin("sgn", m1(), m1());
        let twist = |c: CharSpec| if ty.is_twisted() { c.twisted() } else { c };
        let n = AlgebraicNumber::int;
        let row = |symbol, terms: &[(AlgebraicNumber, usize)], den| ClosedFormRow { symbol, terms: terms.to_vec(), den };
        let h = |e: i32, t: i32| BiPoly::monomial(1, 2 * t, e, false);

        let (symbols, aliases, period, factor, ennola, chars, closed_form): (
            Vec<&'static str>,
            Vec<(&'static str, Vec<&'static str>)>,
            Period,
            BiPoly,
            Option<Vec<usize>>,
            Vec<CharSpec>,
            Vec<ClosedFormRow>,
        ) = match ty {
            GroupType::A2 | GroupType::TwoA2 => (
                vec!["rho"],
                vec![],
                Period::Pi,
                h(8, 3),
                None,
                vec![twist(CharSpec::dihedral("refl", n(1))), id, sgn],
                vec![row("rho", &[(n(1), 0)], 1)],
            ),
            GroupType::B2 => (
                vec!["sigma", "tau", "rho", "theta"],
                vec![],
                Period::W0,
                h(5, 2),
                Some(vec![1, 0, 3, 2]),
                vec![
                    CharSpec::dihedral("refl", AlgebraicNumber::SQRT2),
                    lin("sigma", x(), m1()),
                    lin("tau", m1(), x()),
                    id,
                    sgn,
                ],
                vec![
                    row("sigma", &[(n(1), 1), (n(-1), 2), (n(1), 0)], 2),
                    row("tau", &[(n(-1), 1), (n(1), 2), (n(1), 0)], 2),
                    row("rho", &[(n(1), 1), (n(1), 2), (n(1), 0)], 2),
                    row("theta", &[(n(-1), 1), (n(-1), 2), (n(1), 0)], 2),
                ],
            ),
            GroupType::TwoB2 => (
                vec!["rho_pm"],
                vec![],
                Period::W0,
                h(5, 2),
                None,
                vec![CharSpec::dihedral("refl", AlgebraicNumber::SQRT2).twisted(), id, sgn],
                vec![row("rho_pm", &[(AlgebraicNumber::SQRT2, 0)], 2)],
            ),
            GroupType::G2 => (
                vec!["sigma", "tau", "A", "rho", "J"],
                vec![],
                Period::W0,
                h(7, 3),
                Some(vec![0, 1, 3, 2, 4]),
                vec![
                    CharSpec::dihedral("A", AlgebraicNumber::SQRT3),
                    CharSpec::dihedral("B", n(1)),
                    lin("sigma", m1(), x()),
                    lin("tau", x(), m1()),
                    id,
                    sgn,
                ],
                vec![
                    row("A", &[(n(1), 0), (n(3), 1), (n(2), 2), (n(2), 3)], 6),
                    row("sigma", &[(n(2), 0), (n(4), 2), (n(-2), 3)], 6),
                    row("tau", &[(n(2), 0), (n(-2), 2), (n(4), 3)], 6),
                    row("rho", &[(n(1), 0), (n(-3), 1), (n(2), 2), (n(2), 3)], 6),
                    row("J", &[(n(2), 0), (n(-2), 2), (n(-2), 3)], 6),
                ],
            ),
            GroupType::TwoG2 => (
                vec!["rho_i", "rho'_i", "rho_z"],
                vec![("A", vec!["rho_i", "rho_z"]), ("B", vec!["rho'_i", "rho_z"])],
                Period::W0,
                h(7, 3),
                Some(vec![1, 0, 2]),
                vec![
                    CharSpec::dihedral("A", AlgebraicNumber::SQRT3).twisted(),
                    CharSpec::dihedral("B", n(1)).twisted(),
                    id,
                    sgn,
                ],
                vec![
                    row("rho_i", &[(AlgebraicNumber::SQRT3, 0), (n(3), 1)], 6),
                    row("rho'_i", &[(AlgebraicNumber::SQRT3, 0), (n(-3), 1)], 6),
                    row("rho_z", &[(AlgebraicNumber::SQRT3, 0)], 3),
                ],
            ),
        };
        Self {
            ty,
            sys,
            f,
            symbols,
            aliases,
            period,
            period_factor: factor,
            ennola,
            chars,
            closed_form,
        }
    }

    pub fn monoid(&self) -> BraidMonoid<'_> {
        BraidMonoid::new(&self.sys)
    }

    pub fn period_braid(&self) -> BraidElt {
        let m = self.monoid();
        match self.period {
            Period::Pi => m.pi(),
            Period::W0 => m.delta(),
        }
    }

    pub fn char_spec(&self, name: &str) -> Option<&CharSpec> {
        self.chars.iter().find(|c| c.name == name)
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| *s == name)
    }
}

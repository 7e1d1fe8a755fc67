//! Positive braid monoids with their Garside normal form, and the completed
//! monoid with underlined generators.
//!
//! A positive braid is stored as its left-greedy normal form: a sequence of
//! non-trivial simple elements (elements of `W`) in which every adjacent pair
//! `(a, b)` is left-weighted, i.e. every left descent of `b` is a right
//! descent of `a`.

mod a2;
mod completed;

pub use a2::{A2ClassDescriptor, A2ClassKind, A2_DEFAULT_MAX_LEN};
pub use completed::{CompletedBraidElt, Token, ZBraidElt};

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::coxeter::{CoxeterError, CoxeterSystem, DiagramAuto, WeylElt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("not a left divisor")]
    NotDivisor,
    #[error("token '{0}' is not a reduced word")]
    NotLengthAdditive(String),
    #[error("cannot parse braid: {0}")]
    Parse(String),
    #[error("classification requires the A2 system")]
    NotA2,
    #[error("braid of length {0} exceeds the limit {1}")]
    TooLong(usize, usize),
    #[error("classification failed: {0}")]
    Classification(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// A positive braid in normal form. Only meaningful together with its system.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidElt {
    factors: Vec<WeylElt>,
}

impl BraidElt {
    pub fn factors(&self) -> &[WeylElt] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn length(&self) -> usize {
        self.factors.iter().map(|w| w.length()).sum()
    }
}

/// Operations on positive braids over a fixed Coxeter system.
#[derive(Clone, Copy)]
pub struct BraidMonoid<'a> {
    sys: &'a CoxeterSystem,
}

impl<'a> BraidMonoid<'a> {
    pub fn new(sys: &'a CoxeterSystem) -> Self {
        Self { sys }
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.sys
    }

    pub fn unit(&self) -> BraidElt {
        BraidElt::default()
    }

    pub fn atom(&self, w: WeylElt) -> BraidElt {
        self.normalize(vec![w])
    }

    pub fn generator(&self, s: u8) -> BraidElt {
        self.atom(self.sys.generator(s))
    }

    pub fn delta(&self) -> BraidElt {
        self.atom(self.sys.longest())
    }

    /// `Δ²`, a generator of the centre of `B⁺` for irreducible `W`.
    pub fn pi(&self) -> BraidElt {
        let d = self.sys.longest();
        self.normalize(vec![d, d])
    }

    pub fn from_word(&self, word: &[u8]) -> BraidElt {
        self.normalize(word.iter().map(|&s| self.sys.generator(s)).collect())
    }

    /// Product of an arbitrary sequence of simple elements.
    pub fn from_atoms(&self, atoms: &[WeylElt]) -> BraidElt {
        self.normalize(atoms.to_vec())
    }

    fn normalize(&self, mut f: Vec<WeylElt>) -> BraidElt {
        f.retain(|w| !w.is_identity());
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < f.len() {
                let (a, b) = self.left_weight(f[i], f[i + 1]);
                if a != f[i] {
                    changed = true;
                    f[i] = a;
                    f[i + 1] = b;
                }
                if b.is_identity() {
                    f.remove(i + 1);
                } else {
                    i += 1;
                }
            }
            if !changed {
                return BraidElt { factors: f };
            }
        }
    }

    /// Moves letters from `b` to `a` until the pair is left-weighted.
    fn left_weight(&self, mut a: WeylElt, mut b: WeylElt) -> (WeylElt, WeylElt) {
        'outer: loop {
            for s in self.sys.generators() {
                if self.sys.is_left_descent(b, s) && !self.sys.is_right_descent(a, s) {
                    a = self.sys.mul_gen(a, s);
                    b = self.sys.gen_mul(s, b);
                    continue 'outer;
                }
            }
            return (a, b);
        }
    }

    pub fn mul(&self, a: &BraidElt, b: &BraidElt) -> BraidElt {
        let mut f = a.factors.clone();
        f.extend_from_slice(&b.factors);
        self.normalize(f)
    }

    pub fn mul_atom(&self, a: &BraidElt, w: WeylElt) -> BraidElt {
        let mut f = a.factors.clone();
        f.push(w);
        self.normalize(f)
    }

    pub fn pow(&self, a: &BraidElt, n: usize) -> BraidElt {
        (0..n).fold(self.unit(), |acc, _| self.mul(&acc, a))
    }

    /// Concatenation of the canonical words of the normal-form factors.
    pub fn letters(&self, b: &BraidElt) -> Vec<u8> {
        b.factors.iter().flat_map(|&w| self.sys.word(w).iter().copied()).collect()
    }

    /// First normal-form factor: the largest simple left divisor.
    pub fn alpha(&self, b: &BraidElt) -> WeylElt {
        b.factors.first().copied().unwrap_or_else(|| self.sys.identity())
    }

    /// `α(b)⁻¹ b`.
    pub fn omega(&self, b: &BraidElt) -> BraidElt {
        BraidElt { factors: b.factors.iter().skip(1).copied().collect() }
    }

    /// Number of leading factors equal to `Δ`.
    pub fn inf(&self, b: &BraidElt) -> usize {
        let d = self.sys.longest();
        b.factors.iter().take_while(|&&w| w == d).count()
    }

    pub fn starts_with(&self, b: &BraidElt, s: u8) -> bool {
        self.sys.is_left_descent(self.alpha(b), s)
    }

    /// `s⁻¹ b`, when `s` is a left divisor.
    pub fn strip_gen(&self, b: &BraidElt, s: u8) -> Option<BraidElt> {
        if !self.starts_with(b, s) {
            return None;
        }
        let mut f = b.factors.clone();
        f[0] = self.sys.gen_mul(s, f[0]);
        Some(self.normalize(f))
    }

    /// `a⁻¹ b` if `a` left-divides `b`.
    pub fn left_quotient(&self, a: &BraidElt, b: &BraidElt) -> Option<BraidElt> {
        self.letters(a).iter().try_fold(b.clone(), |acc, &s| self.strip_gen(&acc, s))
    }

    pub fn left_divides(&self, a: &BraidElt, b: &BraidElt) -> bool {
        self.left_quotient(a, b).is_some()
    }

    /// Largest left divisor of `b` lying in the parabolic submonoid on `subset`.
    pub fn alpha_parabolic(&self, b: &BraidElt, subset: &[u8]) -> BraidElt {
        let mut rest = b.clone();
        let mut word = Vec::new();
        'grow: loop {
            for &s in subset {
                if let Some(r) = self.strip_gen(&rest, s) {
                    rest = r;
                    word.push(s);
                    continue 'grow;
                }
            }
            return self.from_word(&word);
        }
    }

    /// `alpha_parabolic(b)⁻¹ b`.
    pub fn omega_parabolic(&self, b: &BraidElt, subset: &[u8]) -> BraidElt {
        let head = self.alpha_parabolic(b, subset);
        self.left_quotient(&head, b).expect("head divides")
    }

    /// The anti-automorphism reversing words.
    pub fn reverse(&self, b: &BraidElt) -> BraidElt {
        let mut word = self.letters(b);
        word.reverse();
        self.from_word(&word)
    }

    pub fn apply_auto(&self, f: &DiagramAuto, b: &BraidElt) -> BraidElt {
        self.normalize(b.factors.iter().map(|&w| self.sys.apply_auto(f, w)).collect())
    }

    /// `y⁻¹ w F(y)` for a simple `y` dividing `w`.
    pub fn conj_elementary(&self, w: &BraidElt, y: WeylElt, f: &DiagramAuto) -> Result<BraidElt, BraidError> {
        let rest = self.left_quotient(&self.atom(y), w).ok_or(BraidError::NotDivisor)?;
        Ok(self.mul_atom(&rest, self.sys.apply_auto(f, y)))
    }

    /// Elements reachable from `w` by at most `depth` elementary conjugations.
    pub fn explore_d_plus(&self, w: &BraidElt, f: &DiagramAuto, depth: usize) -> BTreeSet<BraidElt> {
        let mut seen = BTreeSet::from([w.clone()]);
        let mut queue = VecDeque::from([(w.clone(), 0usize)]);
        while let Some((b, d)) = queue.pop_front() {
            if d == depth {
                continue;
            }
            let a = self.alpha(&b);
            for y in self.sys.elements().filter(|&y| self.sys.is_prefix(y, a)) {
                let next = self.conj_elementary(&b, y, f).expect("prefix of alpha divides");
                if seen.insert(next.clone()) {
                    queue.push_back((next, d + 1));
                }
            }
        }
        seen
    }

    /// Generators `w₀^I` of the `F`-fixed submonoid, one per `F`-orbit `I` on `S`.
    pub fn fixed_submonoid_generators(&self, f: &DiagramAuto) -> Vec<BraidElt> {
        f.orbits().iter().map(|orbit| self.atom(self.sys.longest_in(orbit))).collect()
    }

    /// Reads whitespace-separated tokens: generator words, `pi`, `w0`, or `1`.
    pub fn parse(&self, src: &str) -> Result<BraidElt, BraidError> {
        let mut atoms = Vec::new();
        for tok in src.split_whitespace() {
            match tok {
                "pi" => atoms.extend([self.sys.longest(); 2]),
                "w0" => atoms.push(self.sys.longest()),
                "1" => {}
                _ => {
                    let word = self.sys.parse_word(tok)?;
                    atoms.extend(word.iter().map(|&s| self.sys.generator(s)));
                }
            }
        }
        Ok(self.normalize(atoms))
    }

    /// Normal form with factors separated by dots, `1` for the unit.
    pub fn format(&self, b: &BraidElt) -> String {
        if b.is_unit() {
            return "1".into();
        }
        b.factors.iter().map(|&w| self.sys.format(w)).collect::<Vec<_>>().join(".")
    }

    /// Letters of the normal form as a single word.
    pub fn format_word(&self, b: &BraidElt) -> String {
        if b.is_unit() {
            return "1".into();
        }
        self.sys.format_word(&self.letters(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_moves_delta_left() {
        let a2 = CoxeterSystem::preset("A2").unwrap();
        let m = BraidMonoid::new(&a2);
        let b = m.parse("s s t s").unwrap();
        assert_eq!(m.format(&b), "sts.t");
        assert_eq!(m.inf(&b), 1);
    }

    #[test]
    fn pi_is_central() {
        for name in ["A2", "B2", "G2", "A3"] {
            let sys = CoxeterSystem::preset(name).unwrap();
            let m = BraidMonoid::new(&sys);
            let pi = m.pi();
            for s in sys.generators() {
                let g = m.generator(s);
                assert_eq!(m.mul(&pi, &g), m.mul(&g, &pi), "{name}");
            }
        }
    }

    #[test]
    fn braid_relation_holds() {
        let b2 = CoxeterSystem::preset("B2").unwrap();
        let m = BraidMonoid::new(&b2);
        assert_eq!(m.parse("stst").unwrap(), m.parse("tsts").unwrap());
        assert_ne!(m.parse("sts").unwrap(), m.parse("tst").unwrap());
    }

    #[test]
    fn elementary_conjugation_example() {
        let a2 = CoxeterSystem::preset("A2").unwrap();
        let m = BraidMonoid::new(&a2);
        let id = DiagramAuto::identity(2);
        let orbit = m.explore_d_plus(&m.parse("st").unwrap(), &id, 1);
        let names: Vec<String> = orbit.iter().map(|b| m.format_word(b)).collect();
        assert_eq!(names, vec!["st", "ts"]);
    }

    #[test]
    fn fixed_submonoid_generators_of_swaps() {
        let a1a1 = CoxeterSystem::preset("A1xA1").unwrap();
        let m = BraidMonoid::new(&a1a1);
        let gens = m.fixed_submonoid_generators(&a1a1.swap_auto().unwrap());
        assert_eq!(gens.iter().map(|b| m.format(b)).collect::<Vec<_>>(), vec!["st"]);
        let a2 = CoxeterSystem::preset("A2").unwrap();
        let m = BraidMonoid::new(&a2);
        let gens = m.fixed_submonoid_generators(&a2.swap_auto().unwrap());
        assert_eq!(gens.iter().map(|b| m.format(b)).collect::<Vec<_>>(), vec!["sts"]);
    }

    #[test]
    fn parabolic_alpha() {
        let a2 = CoxeterSystem::preset("A2").unwrap();
        let m = BraidMonoid::new(&a2);
        let b = m.parse("s s t").unwrap();
        assert_eq!(m.format_word(&m.alpha_parabolic(&b, &[0])), "ss");
        assert!(m.alpha_parabolic(&b, &[1]).is_unit());
    }
}

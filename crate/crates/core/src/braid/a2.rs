//! Conjugacy classes of the positive braid monoid of type A2 up to cyclic
//! permutation and the diagram automorphism.
//!
//! Every class contains an element `Δ^m x` with `x` not divisible by `Δ`,
//! and `m` maximal over the class. Such an `x` has a unique word
//! `s^{a₁} t^{a₂} …`, since any occurrence of `sts` would produce a `Δ`.
//! The representative families, with `n = ⌊m/2⌋`, are
//!
//! * `m` even: `s^a`, `st`, or an even number of blocks all `≥ 2`;
//! * `m` odd: `s^a` with `a ∈ {0, 1}`, or an odd number of blocks all `≥ 2`,
//!
//! with block sequences taken lexicographically largest among rotations.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::{BraidElt, BraidError, BraidMonoid};

pub const A2_DEFAULT_MAX_LEN: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum A2ClassKind {
    PowerOfS(u32),
    ST,
    Staircase(Vec<u32>),
    W0Sa(u32),
    W0Staircase(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct A2ClassDescriptor {
    pub n: u32,
    pub kind: A2ClassKind,
    pub phi: u32,
}

impl fmt::Display for A2ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let kind = match &self.kind {
            A2ClassKind::PowerOfS(a) => format!("s^{a}"),
            A2ClassKind::ST => "st".into(),
            A2ClassKind::Staircase(v) => format!("staircase({})", blocks(v)),
            A2ClassKind::W0Sa(a) => format!("w0 s^{a}"),
            A2ClassKind::W0Staircase(v) => format!("w0 staircase({})", blocks(v)),
        };
        write!(f, "pi^{} {} phi={}", self.n, kind, self.phi)
    }
}

fn run_lengths(word: &[u8]) -> Vec<u32> {
    let mut out: Vec<u32> = Vec::new();
    for (i, &c) in word.iter().enumerate() {
        if i > 0 && word[i - 1] == c {
            *out.last_mut().unwrap() += 1;
        } else {
            out.push(1);
        }
    }
    out
}

/// Lexicographically largest rotation.
fn max_rotation(v: &[u32]) -> Vec<u32> {
    (0..v.len()).map(|d| v[d..].iter().chain(&v[..d]).copied().collect::<Vec<_>>()).max().unwrap_or_default()
}

impl BraidMonoid<'_> {
    fn ensure_a2(&self) -> Result<(), BraidError> {
        let sys = self.system();
        if sys.rank() == 2 && sys.m(0, 1) == 3 {
            Ok(())
        } else {
            Err(BraidError::NotA2)
        }
    }

    /// Closure of `b` under `b ↦ s⁻¹ b s` for left divisors `s`, and under the swap of `s` and `t`.
    pub fn a2_orbit(&self, b: &BraidElt) -> Result<BTreeSet<BraidElt>, BraidError> {
        self.ensure_a2()?;
        let swap = self.system().swap_auto()?;
        let mut seen = BTreeSet::from([b.clone()]);
        let mut queue = VecDeque::from([b.clone()]);
        while let Some(c) = queue.pop_front() {
            let mut next = vec![self.apply_auto(&swap, &c)];
            for s in 0..2u8 {
                if let Some(r) = self.strip_gen(&c, s) {
                    next.push(self.mul(&r, &self.generator(s)));
                }
            }
            for n in next {
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        Ok(seen)
    }

    pub fn a2_classify(&self, b: &BraidElt) -> Result<A2ClassDescriptor, BraidError> {
        self.a2_classify_with_limit(b, A2_DEFAULT_MAX_LEN)
    }

    pub fn a2_classify_with_limit(&self, b: &BraidElt, max_len: usize) -> Result<A2ClassDescriptor, BraidError> {
        self.ensure_a2()?;
        if b.length() > max_len {
            return Err(BraidError::TooLong(b.length(), max_len));
        }
        let orbit = self.a2_orbit(b)?;
        let m = orbit.iter().map(|c| self.inf(c)).max().unwrap_or(0);
        let n = (m / 2) as u32;
        let even = m % 2 == 0;
        let mut found = BTreeSet::new();
        for c in orbit.iter().filter(|c| self.inf(c) == m) {
            let x = BraidElt { factors: c.factors()[m..].to_vec() };
            let word = self.letters(&x);
            if word.first().is_some_and(|&l| l != 0) {
                continue;
            }
            let blocks = run_lengths(&word);
            let long = !blocks.is_empty() && blocks.iter().all(|&a| a >= 2);
            let kind = match (even, blocks.len()) {
                (true, 0) => A2ClassKind::PowerOfS(0),
                (true, 1) => A2ClassKind::PowerOfS(blocks[0]),
                (true, 2) if blocks == [1, 1] => A2ClassKind::ST,
                (true, k) if k % 2 == 0 && long => A2ClassKind::Staircase(max_rotation(&blocks)),
                (false, 0) => A2ClassKind::W0Sa(0),
                (false, 1) if blocks[0] == 1 => A2ClassKind::W0Sa(1),
                (false, k) if k % 2 == 1 && long => A2ClassKind::W0Staircase(max_rotation(&blocks)),
                _ => continue,
            };
            found.insert(kind);
        }
        let mut kinds = found.into_iter();
        let kind = match (kinds.next(), kinds.next()) {
            (Some(k), None) => k,
            (None, _) => return Err(BraidError::Classification("no canonical representative".into())),
            (Some(a), Some(b)) => {
                return Err(BraidError::Classification(format!("several representatives: {a:?}, {b:?}")))
            }
        };
        let phi = n + match &kind {
            A2ClassKind::PowerOfS(_) | A2ClassKind::ST => 0,
            A2ClassKind::W0Sa(a) => *a,
            A2ClassKind::Staircase(v) => v.len() as u32 / 2,
            A2ClassKind::W0Staircase(v) => (v.len() as u32 + 1) / 2,
        };
        Ok(A2ClassDescriptor { n, kind, phi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;

    fn classify(word: &str) -> A2ClassDescriptor {
        let a2 = CoxeterSystem::preset("A2").unwrap();
        let m = BraidMonoid::new(&a2);
        m.a2_classify(&m.parse(word).unwrap()).unwrap()
    }

    #[test]
    fn reference_examples() {
        assert_eq!(classify("pi pi"), A2ClassDescriptor { n: 2, kind: A2ClassKind::PowerOfS(0), phi: 2 });
        assert_eq!(classify("st"), A2ClassDescriptor { n: 0, kind: A2ClassKind::ST, phi: 0 });
        assert_eq!(classify("sstt"), A2ClassDescriptor { n: 0, kind: A2ClassKind::Staircase(vec![2, 2]), phi: 1 });
    }

    #[test]
    fn delta_classes() {
        assert_eq!(classify("sts").kind, A2ClassKind::W0Sa(0));
        assert_eq!(classify("stt").kind, A2ClassKind::W0Sa(0));
        assert_eq!(classify("ssst").kind, A2ClassKind::W0Sa(1));
        assert_eq!(classify("t").kind, A2ClassKind::PowerOfS(1));
    }

    #[test]
    fn staircase_is_rotation_maximal() {
        let d = classify("ss ttt ss tt");
        assert_eq!(d.kind, A2ClassKind::Staircase(vec![3, 2, 2, 2]));
        assert_eq!(d.phi, 2);
    }

    #[test]
    fn rejects_other_systems() {
        let b2 = CoxeterSystem::preset("B2").unwrap();
        let m = BraidMonoid::new(&b2);
        assert_eq!(m.a2_classify(&m.unit()), Err(BraidError::NotA2));
    }
}

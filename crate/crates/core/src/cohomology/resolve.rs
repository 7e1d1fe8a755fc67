//! Evaluation of `H(y)` from the closed form, the tables, periodicity,
//! cyclic rotation `H(xy) = H(y F(x))`, and values derived earlier.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use super::{GradedChar, Table, TypeData};
use crate::braid::{CompletedBraidElt, Token, ZBraidElt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    /// An underlined `w₀` annihilates everything.
    W0BarZero,
    Table { line: usize, periods: usize },
    Derived { periods: usize },
    Rotated { steps: usize, inner: Box<Provenance> },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::ClosedForm => f.write_str("closed form"),
            Provenance::W0BarZero => f.write_str("underlined w0"),
            Provenance::Table { line, periods: 0 } => write!(f, "table line {line}"),
            Provenance::Table { line, periods } => write!(f, "table line {line} after {periods} period(s)"),
            Provenance::Derived { periods } => write!(f, "derived value, {periods} period(s)"),
            Provenance::Rotated { steps, inner } => write!(f, "{inner} after {steps} rotation(s)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Resolved {
    pub value: GradedChar,
    pub provenance: Provenance,
}

/// Resolves `H(y)` for one group type against a table and a growing store of derived values.
pub struct Resolver<'t> {
    data: &'static TypeData,
    table: &'t Table,
    derived: HashMap<ZBraidElt, GradedChar>,
    /// Permit rotations and symmetries when direct lookup fails.
    pub rotations: bool,
}

impl<'t> Resolver<'t> {
    pub fn new(table: &'t Table) -> Self {
        Self { data: table.ty.data(), table, derived: HashMap::new(), rotations: true }
    }

    pub fn data(&self) -> &'static TypeData {
        self.data
    }

    pub fn define(&mut self, c: &CompletedBraidElt, value: GradedChar) {
        self.derived.insert(self.data.monoid().zb_image(c), value);
    }

    pub fn derived_count(&self) -> usize {
        self.derived.len()
    }

    fn lookup_derived(&self, zb: &ZBraidElt) -> Option<Resolved> {
        let m = self.data.monoid();
        let p = self.data.period_braid();
        let mut z = zb.clone();
        for n in 0.. {
            if let Some(v) = self.derived.get(&z) {
                let value = v.ennola(self.data, n).scale(&self.data.period_factor.pow(n as u32));
                return Some(Resolved { value, provenance: Provenance::Derived { periods: n } });
            }
            if z.is_empty() {
                return None;
            }
            z = m.zb_left_quotient(&p, &z)?;
        }
        unreachable!()
    }

    /// Resolution without rotations.
    pub fn resolve_direct(&self, c: &CompletedBraidElt) -> Option<Resolved> {
        if c.is_fully_underlined() {
            if let Ok(value) = self.data.closed_form_h(c) {
                return Some(Resolved { value, provenance: Provenance::ClosedForm });
            }
        }
        let w0 = self.data.sys.longest();
        if c.tokens().iter().any(|t| t.underlined && t.elt == w0) {
            return Some(Resolved { value: GradedChar::zero(), provenance: Provenance::W0BarZero });
        }
        let zb = self.data.monoid().zb_image(c);
        if let Some(hit) = self.table.lookup_zb(&zb) {
            let line = self.table.rows()[hit.row].line;
            return Some(Resolved { value: hit.value, provenance: Provenance::Table { line, periods: hit.periods } });
        }
        self.lookup_derived(&zb)
    }

    /// Direct resolution, then cyclic rotations `xy ↦ y F(x)` one letter at a time,
    /// together with the diagram symmetry for split A2.
    pub fn resolve(&self, c: &CompletedBraidElt) -> Option<Resolved> {
        if let Some(r) = self.resolve_direct(c) {
            return Some(r);
        }
        if !self.rotations {
            return None;
        }
        let sys = &self.data.sys;
        let letters: Vec<Token> = c
            .tokens()
            .iter()
            .flat_map(|t| {
                if t.underlined {
                    vec![*t]
                } else {
                    sys.word(t.elt).iter().map(|&s| Token::plain(sys.generator(s))).collect()
                }
            })
            .collect();
        let swap = (self.data.ty == super::GroupType::A2).then(|| sys.swap_auto().expect("rank 2"));
        let f = &self.data.f;
        let mut seen = HashSet::from([letters.clone()]);
        let mut queue = VecDeque::from([(letters, 0usize)]);
        while let Some((seq, steps)) = queue.pop_front() {
            let mut next = Vec::new();
            if let Some((first, rest)) = seq.split_first() {
                let mut rotated = rest.to_vec();
                rotated.push(Token { elt: sys.apply_auto(f, first.elt), underlined: first.underlined });
                next.push(rotated);
            }
            if let Some(sw) = &swap {
                next.push(seq.iter().map(|t| Token { elt: sys.apply_auto(sw, t.elt), ..*t }).collect());
            }
            for n in next {
                if !seen.insert(n.clone()) {
                    continue;
                }
                let candidate = CompletedBraidElt::new(n.iter().copied());
                if let Some(r) = self.resolve_direct(&candidate) {
                    return Some(Resolved {
                        value: r.value,
                        provenance: Provenance::Rotated { steps: steps + 1, inner: Box::new(r.provenance) },
                    });
                }
                queue.push_back((n, steps + 1));
            }
        }
        None
    }
}

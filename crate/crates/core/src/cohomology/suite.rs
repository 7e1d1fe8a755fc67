//! Identity suites: linear relations between values of `H`, one per line.
//!
//! ```text
//! rule_id | lhs = rhs
//! rule_id | even(expr)
//! ```
//!
//! A side is a sum of terms `coef * atom`, where `coef` is a polynomial in
//! `t`, `h`, `eps` and `atom` is one of `H(y)`, `Id(y)`, `St(y)`, `Hs(s,n)`
//! or a literal `{symbol: poly; ...}`. `0` is the empty sum.
//!
//! Instances whose terms are all known are checks. An instance with a single
//! unknown `H(y)` defines that value; suites are evaluated in rounds until no
//! new value is defined, so definitions may come from any line.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use super::resolve::{Resolved, Resolver};
use super::table::parse_graded;
use super::{CohomologyError, GradedChar, GroupType, Table, TypeData};
use crate::braid::{CompletedBraidElt, ZBraidElt};
use crate::rings::BiPoly;

#[derive(Clone, Debug)]
enum Atom {
    H(CompletedBraidElt),
    Id(CompletedBraidElt),
    St(CompletedBraidElt),
    Hs(u8, u32),
    Lit(GradedChar),
}

#[derive(Clone, Debug)]
struct Term {
    coef: BiPoly,
    atom: Atom,
}

#[derive(Clone, Debug)]
enum Relation {
    Eq(Vec<Term>, Vec<Term>),
    Even(Vec<Term>),
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub rule: String,
    pub line: usize,
    pub text: String,
    rel: Relation,
}

#[derive(Clone, Debug)]
pub struct Suite {
    pub ty: GroupType,
    pub instances: Vec<Instance>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail { lhs: GradedChar, rhs: GradedChar },
    /// Fails as a formal identity in `eps` but holds for the listed values.
    EpsOnly { holds_at: Vec<i64> },
    Defined { term: String, value: GradedChar },
    Unresolvable { terms: Vec<String> },
    Error(String),
}

impl Status {
    pub fn is_failure(&self) -> bool {
        matches!(self, Status::Fail { .. } | Status::Unresolvable { .. } | Status::Error(_))
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("pass"),
            Status::Fail { lhs, rhs } => write!(f, "FAIL: lhs = {lhs}, rhs = {rhs}"),
            Status::EpsOnly { holds_at } => write!(f, "holds only for eps in {holds_at:?}"),
            Status::Defined { term, value } => write!(f, "defines {term} = {value}"),
            Status::Unresolvable { terms } => write!(f, "UNRESOLVABLE: {}", terms.join(", ")),
            Status::Error(e) => write!(f, "ERROR: {e}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct InstanceReport {
    pub rule: String,
    pub line: usize,
    pub text: String,
    pub status: Status,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub ty: GroupType,
    pub instances: Vec<InstanceReport>,
}

impl SuiteReport {
    pub fn checks_passed(&self) -> usize {
        self.instances.iter().filter(|r| r.status == Status::Pass).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceReport> {
        self.instances.iter().filter(|r| r.status.is_failure())
    }

    pub fn ok(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Whether some instance of `rule` was checked and passed.
    pub fn rule_passed(&self, rule: &str) -> bool {
        self.instances.iter().any(|r| r.rule == rule && r.status == Status::Pass)
    }
}

/// Splits at top-level occurrences of `sep`, tracking brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Splits a side into signed terms at top-level `+` and `-` (not after `^`, `*` or at the start).
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for c in s.chars() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            _ => {}
        }
        let is_sign = (c == '+' || c == '-') && depth == 0 && !matches!(prev, None | Some('^') | Some('*'));
        if is_sign {
            out.push((neg, std::mem::take(&mut cur)));
            neg = c == '-';
        } else if (c == '+' || c == '-') && depth == 0 && prev.is_none() {
            neg = c == '-';
        } else {
            cur.push(c);
        }
        if !c.is_whitespace() {
            prev = Some(c);
        }
    }
    out.push((neg, cur));
    out
}

fn parse_atom(data: &TypeData, f: &str) -> Result<Option<Atom>, CohomologyError> {
    let m = data.monoid();
    let inner = |prefix: &str| f.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'));
    let braid = |s: &str| m.parse_completed(s).map_err(|e| CohomologyError::Parse(format!("{e} in '{f}'")));
    Ok(Some(if let Some(a) = inner("H(") {
        Atom::H(braid(a)?)
    } else if let Some(a) = inner("Id(") {
        Atom::Id(braid(a)?)
    } else if let Some(a) = inner("St(") {
        Atom::St(braid(a)?)
    } else if let Some(a) = inner("Hs(") {
        let (g, n) = a.split_once(',').ok_or_else(|| CohomologyError::Parse(format!("expected Hs(s,n) in '{f}'")))?;
        let g = g.trim();
        let s = if g.chars().count() == 1 {
            data.sys.gen_index(g.chars().next().unwrap()).map_err(|e| CohomologyError::Parse(e.to_string()))?
        } else {
            return Err(CohomologyError::Parse(format!("bad generator '{g}'")));
        };
        let n = n.trim().parse().map_err(|_| CohomologyError::Parse(format!("bad exponent in '{f}'")))?;
        Atom::Hs(s, n)
    } else if let Some(lit) = f.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        Atom::Lit(parse_graded(data, lit)?)
    } else {
        return Ok(None);
    }))
}

fn parse_side(data: &TypeData, s: &str) -> Result<Vec<Term>, CohomologyError> {
    let mut out = Vec::new();
    for (neg, chunk) in split_terms(s) {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            return Err(CohomologyError::Parse(format!("empty term in '{s}'")));
        }
        let mut atom = None;
        let mut coef_parts = Vec::new();
        for factor in split_top(chunk, '*').into_iter().map(str::trim) {
            match parse_atom(data, factor)? {
                Some(a) if atom.is_none() => atom = Some(a),
                Some(_) => return Err(CohomologyError::Parse(format!("two atoms in term '{chunk}'"))),
                None => coef_parts.push(factor),
            }
        }
        let coef = if coef_parts.is_empty() {
            BiPoly::one()
        } else {
            BiPoly::parse(&coef_parts.join("*")).map_err(|e| CohomologyError::Parse(format!("{e} in '{chunk}'")))?
        };
        let coef = if neg { -coef } else { coef };
        match atom {
            Some(atom) => out.push(Term { coef, atom }),
            None if coef.is_zero() => {}
            None => return Err(CohomologyError::Parse(format!("term '{chunk}' has no H, Id, St, Hs or literal"))),
        }
    }
    Ok(out)
}

impl Suite {
    pub fn parse(ty: GroupType, src: &str) -> Result<Self, CohomologyError> {
        let data = ty.data();
        let mut instances = Vec::new();
        for (i, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |e: CohomologyError| CohomologyError::Data { line: i + 1, msg: e.to_string() };
            let (rule, body) = line
                .split_once('|')
                .ok_or_else(|| err(CohomologyError::Parse("expected 'rule | relation'".into())))?;
            let body = body.trim();
            let rel = if let Some(inner) = body.strip_prefix("even(").and_then(|b| b.strip_suffix(')')) {
                Relation::Even(parse_side(data, inner).map_err(err)?)
            } else {
                let sides = split_top(body, '=');
                let [l, r] = sides[..] else {
                    return Err(err(CohomologyError::Parse("expected exactly one '='".into())));
                };
                Relation::Eq(parse_side(data, l).map_err(err)?, parse_side(data, r).map_err(err)?)
            };
            instances.push(Instance { rule: rule.trim().to_string(), line: i + 1, text: body.to_string(), rel });
        }
        Ok(Suite { ty, instances })
    }

    /// The suite from `$DLCOH_DATA` if set, else the shipped one.
    pub fn load(ty: GroupType) -> Result<Self, CohomologyError> {
        Suite::parse(ty, &super::table::data_source(ty, "ids")?)
    }

    pub fn builtin(ty: GroupType) -> Result<Self, CohomologyError> {
        let src = super::table::builtin_source(&ty.data_stem(), "ids").expect("shipped suite");
        Suite::parse(ty, src)
    }
}

enum Outcome {
    Done(Status),
    Define { key: CompletedBraidElt, value: GradedChar },
    Pending(Vec<String>),
}

/// Known value of `Σ coef · atom`, plus the unknown `H` terms.
struct SideEval {
    known: GradedChar,
    unknown: Vec<(BiPoly, CompletedBraidElt)>,
}

fn eval_side(res: &Resolver<'_>, terms: &[Term]) -> Result<SideEval, CohomologyError> {
    let data = res.data();
    let mut known = GradedChar::zero();
    let mut unknown = Vec::new();
    for t in terms {
        let v = match &t.atom {
            Atom::H(c) => match res.resolve(c) {
                Some(Resolved { value, .. }) => value,
                None => {
                    unknown.push((t.coef.clone(), c.clone()));
                    continue;
                }
            },
            Atom::Id(c) => GradedChar::single("Id", data.id_component(c)),
            Atom::St(c) => GradedChar::single("St", data.st_component(c)),
            Atom::Hs(s, n) => data.hs_formula(*s, *n)?,
            Atom::Lit(g) => g.clone(),
        };
        known = known.add(&v.scale(&t.coef));
    }
    Ok(SideEval { known, unknown })
}

fn compare(lhs: GradedChar, rhs: GradedChar) -> Status {
    if lhs == rhs {
        return Status::Pass;
    }
    let diff = lhs.sub(&rhs);
    let holds_at: Vec<i64> = if diff.has_eps() {
        [0, -1].into_iter().filter(|&e| diff.map(|p| p.specialize_eps(e)).is_zero()).collect()
    } else {
        Vec::new()
    };
    if holds_at.is_empty() {
        Status::Fail { lhs, rhs }
    } else {
        Status::EpsOnly { holds_at }
    }
}

fn evaluate(res: &Resolver<'_>, inst: &Instance) -> Outcome {
    let m = res.data().monoid();
    let run = || -> Result<Outcome, CohomologyError> {
        match &inst.rel {
            Relation::Even(terms) => {
                let side = eval_side(res, terms)?;
                if !side.unknown.is_empty() {
                    return Ok(Outcome::Pending(side.unknown.iter().map(|(_, c)| m.format_completed(c)).collect()));
                }
                Ok(Outcome::Done(if side.known.all_coefficients_even() {
                    Status::Pass
                } else {
                    Status::Fail { lhs: side.known, rhs: GradedChar::zero() }
                }))
            }
            Relation::Eq(l, r) => {
                let (l, r) = (eval_side(res, l)?, eval_side(res, r)?);
                if l.unknown.is_empty() && r.unknown.is_empty() {
                    return Ok(Outcome::Done(compare(l.known, r.known)));
                }
                // group unknowns by their image in ZB⁺
                let mut groups: HashMap<ZBraidElt, (BiPoly, CompletedBraidElt)> = HashMap::new();
                let signed = l.unknown.iter().map(|(c, y)| (c.clone(), y)).chain(r.unknown.iter().map(|(c, y)| (-c.clone(), y)));
                for (coef, y) in signed {
                    let e = groups.entry(m.zb_image(y)).or_insert_with(|| (BiPoly::zero(), y.clone()));
                    e.0 = &e.0 + &coef;
                }
                if groups.len() > 1 {
                    return Ok(Outcome::Pending(groups.values().map(|(_, y)| m.format_completed(y)).collect()));
                }
                let (coef, key) = groups.into_values().next().unwrap();
                if coef.is_zero() {
                    return Ok(Outcome::Done(compare(l.known, r.known)));
                }
                let value = r.known.sub(&l.known).div_exact(&coef).ok_or_else(|| {
                    CohomologyError::Parse(format!("coefficient {coef} does not divide the known part"))
                })?;
                Ok(Outcome::Define { key, value })
            }
        }
    };
    run().unwrap_or_else(|e| Outcome::Done(Status::Error(e.to_string())))
}

/// Evaluates every instance, fanning out over `threads` workers (all cores when `None`).
pub fn verify_suite(suite: &Suite, table: &Table, threads: Option<usize>) -> SuiteReport {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().expect("thread pool");
    pool.install(|| verify_in_pool(suite, table))
}

fn verify_in_pool(suite: &Suite, table: &Table) -> SuiteReport {
    let m = suite.ty.data().monoid();
    let mut res = Resolver::new(table);
    let mut status: Vec<Option<Status>> = vec![None; suite.instances.len()];
    loop {
        let pending: Vec<usize> = (0..status.len()).filter(|&i| status[i].is_none()).collect();
        let outcomes: Vec<(usize, Outcome)> =
            pending.par_iter().map(|&i| (i, evaluate(&res, &suite.instances[i]))).collect();
        let mut defined = false;
        let mut last_unknowns = HashMap::new();
        for (i, outcome) in outcomes {
            match outcome {
                Outcome::Done(s) => status[i] = Some(s),
                Outcome::Define { key, value } => {
                    // a second definition of the same value in this round becomes a check next round
                    if res.resolve(&key).is_none() {
                        res.define(&key, value.clone());
                        status[i] = Some(Status::Defined { term: format!("H({})", m.format_completed(&key)), value });
                        defined = true;
                    }
                }
                Outcome::Pending(terms) => {
                    last_unknowns.insert(i, terms);
                }
            }
        }
        if !defined {
            for (i, terms) in last_unknowns {
                status[i] = Some(Status::Unresolvable { terms });
            }
            break;
        }
    }
    let instances = suite
        .instances
        .iter()
        .zip(status)
        .map(|(inst, s)| InstanceReport {
            rule: inst.rule.clone(),
            line: inst.line,
            text: inst.text.clone(),
            status: s.expect("every instance settled"),
        })
        .collect();
    SuiteReport { ty: suite.ty, instances }
}

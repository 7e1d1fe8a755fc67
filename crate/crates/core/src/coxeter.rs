//! Finite Coxeter groups given by a Coxeter matrix.
//!
//! Elements are enumerated breadth-first. Each element is identified by its
//! ShortLex-minimal reduced word; every reduced word is indexed so that lookups
//! never need a geometric representation. Reduced words of one element are
//! found by closing under braid moves (Matsumoto's theorem).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Default bound on the group order before enumeration gives up.
pub const DEFAULT_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("group has more than {0} elements; not treated as finite")]
    NotFinite(usize),
    #[error("invalid Coxeter matrix: {0}")]
    BadMatrix(String),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(char),
    #[error("cannot parse Coxeter system: {0}")]
    Parse(String),
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("permutation does not preserve the Coxeter matrix")]
    NotAnAutomorphism,
}

/// An element of a [`CoxeterSystem`]. Only meaningful together with its system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt {
    id: u32,
    length: u16,
}

impl WeylElt {
    pub fn id(self) -> usize {
        self.id as usize
    }

    pub fn length(self) -> usize {
        self.length as usize
    }

    pub fn is_identity(self) -> bool {
        self.id == 0
    }
}

#[derive(Debug, Clone)]
struct EltData {
    word: Vec<u8>,
    left_desc: u64,
    right_desc: u64,
}

/// A permutation of the generators preserving the Coxeter matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramAuto {
    perm: Vec<u8>,
}

impl DiagramAuto {
    pub fn identity(rank: usize) -> Self {
        Self { perm: (0..rank as u8).collect() }
    }

    pub fn image(&self, s: u8) -> u8 {
        self.perm[s as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    /// Orbits on the generating set.
    pub fn orbits(&self) -> Vec<Vec<u8>> {
        let mut seen = vec![false; self.perm.len()];
        let mut out = Vec::new();
        for s in 0..self.perm.len() {
            if seen[s] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut cur = s;
            while !seen[cur] {
                seen[cur] = true;
                orbit.push(cur as u8);
                cur = self.perm[cur] as usize;
            }
            orbit.sort();
            out.push(orbit);
        }
        out
    }
}

pub struct CoxeterSystem {
    name: String,
    m: Vec<Vec<u32>>,
    names: Vec<char>,
    elts: Vec<EltData>,
    right_mult: Vec<Vec<u32>>,
    left_mult: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    word_index: HashMap<Vec<u8>, u32>,
    longest: u32,
    lower: Vec<OnceLock<Vec<WeylElt>>>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("name", &self.name)
            .field("rank", &self.rank())
            .field("order", &self.order())
            .finish()
    }
}

impl CoxeterSystem {
    /// Builds the group from a Coxeter matrix; `m[i][j] = 0` means no relation.
    pub fn new(m: Vec<Vec<u32>>, names: Vec<char>, cap: usize) -> Result<Self, CoxeterError> {
        let rank = m.len();
        if rank == 0 || rank > 64 {
            return Err(CoxeterError::BadMatrix("rank must be between 1 and 64".into()));
        }
        if names.len() != rank {
            return Err(CoxeterError::BadMatrix("one name per generator required".into()));
        }
        let distinct: HashSet<_> = names.iter().collect();
        if distinct.len() != rank || names.iter().any(|c| c.is_whitespace() || *c == '_') {
            return Err(CoxeterError::BadMatrix("generator names must be distinct letters".into()));
        }
        for i in 0..rank {
            if m[i].len() != rank {
                return Err(CoxeterError::BadMatrix("matrix must be square".into()));
            }
            for j in 0..rank {
                let v = m[i][j];
                if m[j][i] != v {
                    return Err(CoxeterError::BadMatrix("matrix must be symmetric".into()));
                }
                if (i == j) != (v == 1) {
                    return Err(CoxeterError::BadMatrix(format!("bad entry m({i},{j}) = {v}")));
                }
            }
        }
        let mut sys = Self {
            name: String::new(),
            m,
            names,
            elts: Vec::new(),
            right_mult: Vec::new(),
            left_mult: Vec::new(),
            inverse: Vec::new(),
            word_index: HashMap::new(),
            longest: 0,
            lower: Vec::new(),
        };
        sys.enumerate(cap)?;
        sys.name = sys.config_string();
        Ok(sys)
    }

    /// Presets: `A1`, `A2`, `B2`, `G2`, `A3`, `A1xA1`, and `I2(m)`.
    pub fn preset(name: &str) -> Result<Self, CoxeterError> {
        let st = vec!['s', 't'];
        let mut sys = match name {
            "A1" => Self::new(vec![vec![1]], vec!['s'], DEFAULT_CAP),
            "A2" => Self::dihedral(3),
            "B2" => Self::dihedral(4),
            "G2" => Self::dihedral(6),
            "A1xA1" => Self::new(vec![vec![1, 2], vec![2, 1]], st, DEFAULT_CAP),
            "A3" => Self::new(
                vec![vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]],
                vec!['1', '2', '3'],
                DEFAULT_CAP,
            ),
            _ => {
                let m = name
                    .strip_prefix("I2(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|v| v.parse::<u32>().ok())
                    .filter(|&v| v >= 2)
                    .ok_or_else(|| CoxeterError::UnknownPreset(name.to_string()))?;
                Self::dihedral(m)
            }
        }?;
        sys.name = name.to_string();
        Ok(sys)
    }

    /// The dihedral group I2(m) on generators `s`, `t`.
    pub fn dihedral(m: u32) -> Result<Self, CoxeterError> {
        Self::new(vec![vec![1, m], vec![m, 1]], vec!['s', 't'], DEFAULT_CAP)
    }

    /// Parses `rank=2; m(s,t)=3; names=st`. Unlisted pairs commute.
    pub fn from_config(src: &str) -> Result<Self, CoxeterError> {
        let mut rank = None;
        let mut names: Option<Vec<char>> = None;
        let mut pairs = Vec::new();
        for stmt in src.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, val) = stmt
                .split_once('=')
                .ok_or_else(|| CoxeterError::Parse(format!("expected key=value in '{stmt}'")))?;
            let (key, val) = (key.trim(), val.trim());
            if key == "rank" {
                rank = Some(val.parse::<usize>().map_err(|_| CoxeterError::Parse("bad rank".into()))?);
            } else if key == "names" {
                names = Some(val.chars().collect());
            } else if let Some(inner) = key.strip_prefix("m(").and_then(|k| k.strip_suffix(')')) {
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| CoxeterError::Parse(format!("bad pair '{inner}'")))?;
                let v = match val {
                    "inf" | "oo" => 0,
                    _ => val.parse::<u32>().map_err(|_| CoxeterError::Parse(format!("bad order '{val}'")))?,
                };
                pairs.push((a.trim().to_string(), b.trim().to_string(), v));
            } else {
                return Err(CoxeterError::Parse(format!("unknown key '{key}'")));
            }
        }
        let rank = rank.or(names.as_ref().map(Vec::len)).ok_or_else(|| CoxeterError::Parse("missing rank".into()))?;
        let names = names.unwrap_or_else(|| {
            if rank == 2 {
                vec!['s', 't']
            } else {
                (0..rank).map(|i| char::from_digit(i as u32 + 1, 36).unwrap_or('?')).collect()
            }
        });
        if names.len() != rank {
            return Err(CoxeterError::Parse("names do not match rank".into()));
        }
        let mut m = vec![vec![2u32; rank]; rank];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let idx = |n: &str| -> Result<usize, CoxeterError> {
            let mut cs = n.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => names.iter().position(|&x| x == c).ok_or(CoxeterError::UnknownGenerator(c)),
                _ => Err(CoxeterError::Parse(format!("bad generator '{n}'"))),
            }
        };
        for (a, b, v) in pairs {
            let (i, j) = (idx(&a)?, idx(&b)?);
            if i == j || v == 1 {
                return Err(CoxeterError::BadMatrix(format!("m({a},{b}) = {v}")));
            }
            m[i][j] = v;
            m[j][i] = v;
        }
        Self::new(m, names, DEFAULT_CAP)
    }

    fn config_string(&self) -> String {
        let mut parts = vec![format!("rank={}", self.rank())];
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                if self.m[i][j] != 2 {
                    parts.push(format!("m({},{})={}", self.names[i], self.names[j], self.m[i][j]));
                }
            }
        }
        parts.push(format!("names={}", self.names.iter().collect::<String>()));
        parts.join("; ")
    }

    fn enumerate(&mut self, cap: usize) -> Result<(), CoxeterError> {
        let rank = self.rank();
        self.elts.push(EltData { word: vec![], left_desc: 0, right_desc: 0 });
        self.word_index.insert(vec![], 0);
        self.right_mult.push(vec![u32::MAX; rank]);
        let mut current = vec![0u32];
        while !current.is_empty() {
            // canonical word -> closure; candidate word -> canonical word
            let mut found: HashMap<Vec<u8>, Vec<Vec<u8>>> = HashMap::new();
            let mut pending: HashMap<Vec<u8>, Vec<u8>> = HashMap::new();
            let mut ascents = Vec::new();
            for &w in &current {
                let data = &self.elts[w as usize];
                for s in 0..rank as u8 {
                    if data.right_desc & (1 << s) != 0 {
                        continue;
                    }
                    let mut cand = data.word.clone();
                    cand.push(s);
                    let canon = match pending.get(&cand) {
                        Some(c) => c.clone(),
                        None => {
                            let closure = self.braid_closure(&cand);
                            let canon = closure.iter().min().unwrap().clone();
                            for word in &closure {
                                pending.insert(word.clone(), canon.clone());
                            }
                            found.insert(canon.clone(), closure);
                            canon
                        }
                    };
                    ascents.push((w, s, canon));
                }
            }
            let mut canons: Vec<_> = found.keys().cloned().collect();
            canons.sort();
            let mut next = Vec::with_capacity(canons.len());
            for canon in canons {
                let id = self.elts.len() as u32;
                if self.elts.len() >= cap {
                    return Err(CoxeterError::NotFinite(cap));
                }
                let closure = &found[&canon];
                let (mut ld, mut rd) = (0u64, 0u64);
                for word in closure {
                    ld |= 1 << word[0];
                    rd |= 1 << word[word.len() - 1];
                    self.word_index.insert(word.clone(), id);
                }
                self.elts.push(EltData { word: canon, left_desc: ld, right_desc: rd });
                self.right_mult.push(vec![u32::MAX; rank]);
                next.push(id);
            }
            for (w, s, canon) in ascents {
                let v = self.word_index[&canon];
                self.right_mult[w as usize][s as usize] = v;
                self.right_mult[v as usize][s as usize] = w;
            }
            current = next;
        }
        let n = self.elts.len();
        self.longest = (n - 1) as u32;
        self.inverse = (0..n)
            .map(|i| {
                let word = &self.elts[i].word;
                word.iter().rev().fold(0u32, |acc, &s| self.right_mult[acc as usize][s as usize])
            })
            .collect();
        self.left_mult = (0..n)
            .map(|i| {
                (0..rank)
                    .map(|s| {
                        let inv = self.inverse[i] as usize;
                        self.inverse[self.right_mult[inv][s] as usize]
                    })
                    .collect()
            })
            .collect();
        self.lower = (0..n).map(|_| OnceLock::new()).collect();
        Ok(())
    }

    /// All words obtained from a reduced word by braid moves.
    fn braid_closure(&self, start: &[u8]) -> Vec<Vec<u8>> {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.to_vec());
        queue.push_back(start.to_vec());
        while let Some(word) = queue.pop_front() {
            for i in 0..word.len().saturating_sub(1) {
                let (a, b) = (word[i], word[i + 1]);
                if a == b {
                    continue;
                }
                let m = self.m[a as usize][b as usize] as usize;
                if m == 0 || i + m > word.len() {
                    continue;
                }
                let alternating = (0..m).all(|k| word[i + k] == if k % 2 == 0 { a } else { b });
                if !alternating {
                    continue;
                }
                let mut moved = word.clone();
                for k in 0..m {
                    moved[i + k] = if k % 2 == 0 { b } else { a };
                }
                if seen.insert(moved.clone()) {
                    queue.push_back(moved);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn order(&self) -> usize {
        self.elts.len()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.m
    }

    pub fn m(&self, s: u8, t: u8) -> u32 {
        self.m[s as usize][t as usize]
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    fn elt(&self, id: u32) -> WeylElt {
        WeylElt { id, length: self.elts[id as usize].word.len() as u16 }
    }

    pub fn identity(&self) -> WeylElt {
        self.elt(0)
    }

    pub fn longest(&self) -> WeylElt {
        self.elt(self.longest)
    }

    pub fn generator(&self, s: u8) -> WeylElt {
        self.elt(self.right_mult[0][s as usize])
    }

    pub fn generators(&self) -> impl Iterator<Item = u8> {
        0..self.rank() as u8
    }

    /// All elements in ShortLex order of their canonical words.
    pub fn elements(&self) -> impl Iterator<Item = WeylElt> + '_ {
        (0..self.elts.len() as u32).map(|i| self.elt(i))
    }

    /// The ShortLex-minimal reduced word.
    pub fn word(&self, w: WeylElt) -> &[u8] {
        &self.elts[w.id()].word
    }

    pub fn gen_index(&self, c: char) -> Result<u8, CoxeterError> {
        self.names.iter().position(|&n| n == c).map(|i| i as u8).ok_or(CoxeterError::UnknownGenerator(c))
    }

    pub fn parse_word(&self, s: &str) -> Result<Vec<u8>, CoxeterError> {
        s.chars().filter(|c| !c.is_whitespace()).map(|c| self.gen_index(c)).collect()
    }

    pub fn format_word(&self, word: &[u8]) -> String {
        word.iter().map(|&s| self.names[s as usize]).collect()
    }

    pub fn format(&self, w: WeylElt) -> String {
        if w.is_identity() {
            "1".to_string()
        } else {
            self.format_word(self.word(w))
        }
    }

    /// Product of the letters of an arbitrary word.
    pub fn from_word(&self, word: &[u8]) -> WeylElt {
        word.iter().fold(self.identity(), |acc, &s| self.mul_gen(acc, s))
    }

    /// The element of a reduced word, or `None` if the word is not reduced.
    pub fn from_reduced_word(&self, word: &[u8]) -> Option<WeylElt> {
        self.word_index.get(word).map(|&id| self.elt(id))
    }

    pub fn mul_gen(&self, w: WeylElt, s: u8) -> WeylElt {
        self.elt(self.right_mult[w.id()][s as usize])
    }

    pub fn gen_mul(&self, s: u8, w: WeylElt) -> WeylElt {
        self.elt(self.left_mult[w.id()][s as usize])
    }

    pub fn mul(&self, u: WeylElt, v: WeylElt) -> WeylElt {
        self.word(v).iter().fold(u, |acc, &s| self.mul_gen(acc, s))
    }

    pub fn inverse(&self, w: WeylElt) -> WeylElt {
        self.elt(self.inverse[w.id()])
    }

    pub fn is_right_descent(&self, w: WeylElt, s: u8) -> bool {
        self.elts[w.id()].right_desc & (1 << s) != 0
    }

    pub fn is_left_descent(&self, w: WeylElt, s: u8) -> bool {
        self.elts[w.id()].left_desc & (1 << s) != 0
    }

    pub fn right_descents(&self, w: WeylElt) -> Vec<u8> {
        self.generators().filter(|&s| self.is_right_descent(w, s)).collect()
    }

    pub fn left_descents(&self, w: WeylElt) -> Vec<u8> {
        self.generators().filter(|&s| self.is_left_descent(w, s)).collect()
    }

    /// Generators occurring in any reduced word of `w`.
    pub fn support(&self, w: WeylElt) -> Vec<u8> {
        let mut s: Vec<u8> = self.word(w).to_vec();
        s.sort();
        s.dedup();
        s
    }

    /// No generator of `subset` is a left descent of `w`.
    pub fn is_i_reduced(&self, w: WeylElt, subset: &[u8]) -> bool {
        subset.iter().all(|&s| !self.is_left_descent(w, s))
    }

    /// No generator of `subset` is a right descent of `w`.
    pub fn is_reduced_i(&self, w: WeylElt, subset: &[u8]) -> bool {
        subset.iter().all(|&s| !self.is_right_descent(w, s))
    }

    /// `y` is a prefix of `w` in the weak order: `l(y) + l(y⁻¹w) = l(w)`.
    pub fn is_prefix(&self, y: WeylElt, w: WeylElt) -> bool {
        let rest = self.mul(self.inverse(y), w);
        y.length() + rest.length() == w.length()
    }

    /// Bruhat order, by descending along a fixed reduced word of `w`.
    pub fn bruhat_leq(&self, v: WeylElt, w: WeylElt) -> bool {
        if v.length() > w.length() {
            return false;
        }
        let mut u = v;
        for &s in self.word(w).iter().rev() {
            if self.is_right_descent(u, s) {
                u = self.mul_gen(u, s);
            }
        }
        u.is_identity()
    }

    /// The Bruhat interval `[1, w]`, in ShortLex order.
    pub fn lower_interval(&self, w: WeylElt) -> &[WeylElt] {
        self.lower[w.id()].get_or_init(|| self.elements().filter(|&v| self.bruhat_leq(v, w)).collect())
    }

    /// Longest element of the parabolic subgroup on `subset`.
    pub fn longest_in(&self, subset: &[u8]) -> WeylElt {
        let mut w = self.identity();
        'grow: loop {
            for &s in subset {
                if !self.is_right_descent(w, s) {
                    w = self.mul_gen(w, s);
                    continue 'grow;
                }
            }
            return w;
        }
    }

    pub fn diagram_auto(&self, perm: Vec<u8>) -> Result<DiagramAuto, CoxeterError> {
        let n = self.rank();
        let mut sorted = perm.clone();
        sorted.sort();
        if sorted != (0..n as u8).collect::<Vec<_>>() {
            return Err(CoxeterError::NotAnAutomorphism);
        }
        for i in 0..n {
            for j in 0..n {
                if self.m[i][j] != self.m[perm[i] as usize][perm[j] as usize] {
                    return Err(CoxeterError::NotAnAutomorphism);
                }
            }
        }
        Ok(DiagramAuto { perm })
    }

    /// The automorphism exchanging the two generators of a rank-2 system.
    pub fn swap_auto(&self) -> Result<DiagramAuto, CoxeterError> {
        if self.rank() != 2 {
            return Err(CoxeterError::NotAnAutomorphism);
        }
        self.diagram_auto(vec![1, 0])
    }

    pub fn apply_auto(&self, f: &DiagramAuto, w: WeylElt) -> WeylElt {
        let word: Vec<u8> = self.word(w).iter().map(|&s| f.image(s)).collect();
        self.from_reduced_word(&word).expect("automorphisms preserve reduced words")
    }
}

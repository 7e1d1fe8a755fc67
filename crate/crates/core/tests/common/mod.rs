//! Brute-force oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use dlcoh::coxeter::{CoxeterSystem, WeylElt};

/// All words over `0..rank` of length at most `max`.
pub fn all_words(rank: u8, max: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..rank {
                let mut v: Vec<u8> = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// The class of a positive word under the braid relations of `sys`, by exhaustive rewriting.
pub fn braid_class(sys: &CoxeterSystem, word: &[u8]) -> BTreeSet<Vec<u8>> {
    let mut seen = BTreeSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for a in sys.generators() {
            for b in sys.generators() {
                if a == b {
                    continue;
                }
                let m = sys.m(a, b) as usize;
                if m == 0 || m > w.len() {
                    continue;
                }
                for i in 0..=w.len() - m {
                    let alternating = (0..m).all(|j| w[i + j] == if j % 2 == 0 { a } else { b });
                    if alternating {
                        let mut v = w.clone();
                        for j in 0..m {
                            v[i + j] = if j % 2 == 0 { b } else { a };
                        }
                        if seen.insert(v.clone()) {
                            queue.push_back(v);
                        }
                    }
                }
            }
        }
    }
    seen
}

/// The element of `W` spelled by `word` if the word is reduced.
pub fn reduced_element(sys: &CoxeterSystem, word: &[u8]) -> Option<WeylElt> {
    let w = sys.from_word(word);
    (w.length() == word.len()).then_some(w)
}

/// Largest simple left divisor, from the prefixes of all words in the class.
pub fn brute_alpha(sys: &CoxeterSystem, word: &[u8]) -> WeylElt {
    let class = braid_class(sys, word);
    let mut divisors = BTreeSet::new();
    for w in &class {
        for k in 0..=w.len() {
            match reduced_element(sys, &w[..k]) {
                Some(e) => {
                    divisors.insert(e);
                }
                None => break,
            }
        }
    }
    let best = *divisors.iter().max_by_key(|e| e.length()).unwrap();
    for &d in &divisors {
        assert!(sys.is_prefix(d, best), "simple divisors do not have a maximum");
    }
    best
}

/// `a` left-divides `b` in `B⁺` iff some word for `b` starts with a word for `a`.
pub fn brute_left_divides(sys: &CoxeterSystem, a: &[u8], b: &[u8]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let ca = braid_class(sys, a);
    braid_class(sys, b).iter().any(|w| ca.contains(&w[..a.len()]))
}

/// Closure of the class of `word` under one-letter rotations and the swap of the two generators.
pub fn rotation_swap_orbit(sys: &CoxeterSystem, word: &[u8]) -> BTreeSet<Vec<u8>> {
    let start: Vec<u8> = braid_class(sys, word).into_iter().min().unwrap();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        let mut next = Vec::new();
        for v in braid_class(sys, &w) {
            if !v.is_empty() {
                let mut r = v[1..].to_vec();
                r.push(v[0]);
                next.push(r);
            }
            next.push(v.iter().map(|&g| 1 - g).collect());
        }
        for n in next {
            let canon = braid_class(sys, &n).into_iter().min().unwrap();
            if seen.insert(canon.clone()) {
                queue.push_back(canon);
            }
        }
    }
    seen
}

/// Kazhdan-Lusztig polynomials from R-polynomials, as integer coefficient vectors in `q`.
pub struct KlOracle {
    pub n: usize,
    pub p: Vec<Vec<Vec<i64>>>,
}

fn poly_add(a: &mut Vec<i64>, b: &[i64], shift: usize, k: i64) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] += k * c;
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; (a.len() + b.len()).max(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

impl KlOracle {
    /// `R_{y,w}` by the descent recursion, then `P_{y,w}` from
    /// `q^{l(w)-l(y)} P̄_{y,w} - P_{y,w} = Σ_{y<z≤w} R_{y,z} P_{z,w}` and the degree bound.
    pub fn new(sys: &CoxeterSystem) -> Self {
        let n = sys.order();
        let elts: Vec<WeylElt> = sys.elements().collect();
        let mut by_len = elts.clone();
        by_len.sort_by_key(|e| e.length());
        let mut r: Vec<Vec<Vec<i64>>> = vec![vec![vec![]; n]; n];
        for &w in &by_len {
            for &y in &elts {
                let val = if !sys.bruhat_leq(y, w) {
                    vec![]
                } else if w.is_identity() {
                    vec![1]
                } else {
                    let s = sys.generators().find(|&s| sys.is_right_descent(w, s)).unwrap();
                    let ws = sys.mul_gen(w, s);
                    let ys = sys.mul_gen(y, s);
                    if sys.is_right_descent(y, s) {
                        r[ys.id()][ws.id()].clone()
                    } else {
                        // (q - 1) R_{y,ws} + q R_{ys,ws}
                        let mut out = Vec::new();
                        poly_add(&mut out, &r[y.id()][ws.id()], 1, 1);
                        poly_add(&mut out, &r[y.id()][ws.id()], 0, -1);
                        poly_add(&mut out, &r[ys.id()][ws.id()], 1, 1);
                        trim(out)
                    }
                };
                r[y.id()][w.id()] = val;
            }
        }
        let mut p: Vec<Vec<Vec<i64>>> = vec![vec![vec![]; n]; n];
        for &w in &elts {
            p[w.id()][w.id()] = vec![1];
            let mut below: Vec<WeylElt> =
                elts.iter().copied().filter(|&y| y != w && sys.bruhat_leq(y, w)).collect();
            below.sort_by_key(|e| std::cmp::Reverse(e.length()));
            for y in below {
                let mut rhs = Vec::new();
                for &z in &elts {
                    if z != y && sys.bruhat_leq(y, z) && sys.bruhat_leq(z, w) {
                        poly_add(&mut rhs, &poly_mul(&r[y.id()][z.id()], &p[z.id()][w.id()]), 0, 1);
                    }
                }
                // rhs = q^d P̄ - P, with deg P ≤ (d-1)/2: P is minus the low half of rhs
                let d = w.length() - y.length();
                let mut pp = vec![0; (d - 1) / 2 + 1];
                for (i, c) in pp.iter_mut().enumerate() {
                    *c = -rhs.get(i).copied().unwrap_or(0);
                }
                p[y.id()][w.id()] = trim(pp);
            }
        }
        KlOracle { n, p }
    }
}

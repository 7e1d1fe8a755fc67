mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{all_words, braid_class, brute_alpha, brute_left_divides, rotation_swap_orbit};
use dlcoh::braid::{A2ClassKind, BraidMonoid};
use dlcoh::coxeter::CoxeterSystem;
use proptest::prelude::*;

const SYSTEMS: [&str; 4] = ["A2", "B2", "G2", "A3"];

#[test]
fn normal_form_separates_braid_classes() {
    for name in SYSTEMS {
        let sys = CoxeterSystem::preset(name).unwrap();
        let m = BraidMonoid::new(&sys);
        let max = if sys.rank() == 3 { 5 } else { 7 };
        let mut by_nf: BTreeMap<_, Vec<u8>> = BTreeMap::new();
        for w in all_words(sys.rank() as u8, max) {
            let b = m.from_word(&w);
            assert_eq!(b.length(), w.len());
            match by_nf.get(&b) {
                Some(rep) => assert!(braid_class(&sys, rep).contains(&w), "{name}: {w:?} vs {rep:?}"),
                None => {
                    for v in braid_class(&sys, &w) {
                        assert_eq!(m.from_word(&v), b, "{name}: {w:?} ~ {v:?}");
                    }
                    by_nf.insert(b, w);
                }
            }
        }
    }
}

#[test]
fn alpha_is_the_largest_simple_divisor() {
    for name in SYSTEMS {
        let sys = CoxeterSystem::preset(name).unwrap();
        let m = BraidMonoid::new(&sys);
        let max = if sys.rank() == 3 { 5 } else { 7 };
        for w in all_words(sys.rank() as u8, max) {
            let b = m.from_word(&w);
            assert_eq!(m.alpha(&b), brute_alpha(&sys, &w), "{name}: {w:?}");
            let rebuilt = m.mul(&m.atom(m.alpha(&b)), &m.omega(&b));
            assert_eq!(rebuilt, b);
        }
    }
}

#[test]
fn divisibility_matches_prefixes() {
    for name in ["A2", "B2", "A3"] {
        let sys = CoxeterSystem::preset(name).unwrap();
        let m = BraidMonoid::new(&sys);
        let words = all_words(sys.rank() as u8, 4);
        let long = all_words(sys.rank() as u8, 5);
        for a in &words {
            for b in long.iter().filter(|b| b.len() >= 3) {
                let (x, y) = (m.from_word(a), m.from_word(b));
                assert_eq!(m.left_divides(&x, &y), brute_left_divides(&sys, a, b), "{name}: {a:?} | {b:?}");
                if let Some(q) = m.left_quotient(&x, &y) {
                    assert_eq!(m.mul(&x, &q), y);
                }
            }
        }
    }
}

#[test]
fn parabolic_head_is_the_largest_power_prefix() {
    for name in ["A2", "B2", "G2"] {
        let sys = CoxeterSystem::preset(name).unwrap();
        let m = BraidMonoid::new(&sys);
        for w in all_words(2, 7) {
            let b = m.from_word(&w);
            for s in 0..2u8 {
                let k = (0..=w.len()).rev().find(|&k| m.left_divides(&m.from_word(&vec![s; k]), &b)).unwrap();
                let brute = (0..=w.len())
                    .rev()
                    .find(|&k| braid_class(&sys, &w).iter().any(|v| v[..k].iter().all(|&g| g == s)))
                    .unwrap();
                assert_eq!(k, brute);
                let head = m.alpha_parabolic(&b, &[s]);
                assert_eq!(head, m.from_word(&vec![s; k]), "{name}: {w:?}");
                let tail = m.omega_parabolic(&b, &[s]);
                assert_eq!(m.mul(&head, &tail), b);
                assert!(!m.starts_with(&tail, s));
            }
            assert_eq!(m.alpha_parabolic(&b, &[0, 1]), b);
        }
    }
}

#[test]
fn delta_and_pi() {
    for name in SYSTEMS {
        let sys = CoxeterSystem::preset(name).unwrap();
        let m = BraidMonoid::new(&sys);
        let d = m.delta();
        assert_eq!(m.pi(), m.mul(&d, &d));
        for s in sys.generators() {
            assert!(m.starts_with(&d, s));
            // Δ s = F(s) Δ where F is conjugation by w0
            let g = m.generator(s);
            let fs = sys.mul(sys.mul(sys.longest(), sys.generator(s)), sys.longest());
            assert_eq!(m.mul(&d, &g), m.mul(&m.atom(fs), &d));
            assert_eq!(m.mul(&m.pi(), &g), m.mul(&g, &m.pi()));
        }
        assert_eq!(m.inf(&m.pow(&d, 3)), 3);
    }
}

#[test]
fn a2_classes_are_the_rotation_orbits() {
    let sys = CoxeterSystem::preset("A2").unwrap();
    let m = BraidMonoid::new(&sys);
    let mut orbit_of: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut orbits: Vec<BTreeSet<Vec<u8>>> = Vec::new();
    let mut descriptors: Vec<_> = Vec::new();
    for w in all_words(2, 6) {
        let canon = braid_class(&sys, &w).into_iter().min().unwrap();
        let desc = m.a2_classify(&m.from_word(&w)).unwrap();
        let idx = match orbit_of.get(&canon) {
            Some(&i) => i,
            None => {
                let o = rotation_swap_orbit(&sys, &w);
                for c in &o {
                    orbit_of.insert(c.clone(), orbits.len());
                }
                orbits.push(o);
                descriptors.push(desc.clone());
                orbits.len() - 1
            }
        };
        assert_eq!(descriptors[idx], desc, "{w:?}");
    }
    let distinct: BTreeSet<_> = descriptors.iter().collect();
    assert_eq!(distinct.len(), descriptors.len(), "different orbits share a descriptor");
}

#[test]
fn a2_reference_classes() {
    let sys = CoxeterSystem::preset("A2").unwrap();
    let m = BraidMonoid::new(&sys);
    let c = |s: &str| m.a2_classify(&m.parse(s).unwrap()).unwrap();
    assert_eq!(c("1").kind, A2ClassKind::PowerOfS(0));
    assert_eq!(c("s s s").kind, A2ClassKind::PowerOfS(3));
    assert_eq!(c("t s").kind, A2ClassKind::ST);
    assert_eq!(c("s t s s").kind, A2ClassKind::W0Sa(1));
    let d = c("ss tt sss tt");
    assert_eq!(d.kind, A2ClassKind::Staircase(vec![3, 2, 2, 2]));
    assert_eq!(d.phi, 2);
    assert_eq!(c("pi s t").phi, 1);
    let long = m.from_word(&[0; 21]);
    assert!(m.a2_classify(&long).is_err());
    assert!(m.a2_classify_with_limit(&long, 30).is_ok());
}

#[test]
fn completed_elements() {
    let sys = CoxeterSystem::preset("A2").unwrap();
    let m = BraidMonoid::new(&sys);
    let p = |s: &str| m.parse_completed(s).unwrap();
    // _s expands to 1 + s
    let z = m.zb_image(&p("_s"));
    assert_eq!(z.len(), 2);
    assert!(m.completed_equal(&p("_s _t"), &p("_st")));
    assert!(!m.completed_equal(&p("_s _t"), &p("_t _s")));
    assert!(m.completed_equal(&p("s t s"), &p("t s t")));
    assert!(m.completed_equal(&p("w0 w0"), &p("pi")));
    assert!(!m.completed_equal(&p("_w0"), &p("_s _t _s")));
    assert!(m.parse_completed("ss").is_err());
    assert!(m.parse_completed("_pi").is_err());
    for src in ["_s t", "_sts s t", "pi _t", "1"] {
        let c = p(src);
        assert_eq!(p(&m.format_completed(&c)), c);
    }
    assert_eq!(m.rho(&p("_s t _s")), m.parse("sts").unwrap());
    let swap = sys.swap_auto().unwrap();
    assert_eq!(m.completed_apply_auto(&swap, &p("_s t")), p("_t s"));
}

fn a2_word() -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..2, 0..10)
}

proptest! {
    #[test]
    fn pi_raises_phi_by_one(w in a2_word()) {
        let sys = CoxeterSystem::preset("A2").unwrap();
        let m = BraidMonoid::new(&sys);
        let b = m.from_word(&w);
        let d = m.a2_classify(&b).unwrap();
        let e = m.a2_classify(&m.mul(&m.pi(), &b)).unwrap();
        prop_assert_eq!(e.phi, d.phi + 1);
        prop_assert_eq!(e.n, d.n + 1);
        prop_assert_eq!(e.kind, d.kind);
    }

    #[test]
    fn monoid_laws(a in a2_word(), b in a2_word(), c in a2_word()) {
        let sys = CoxeterSystem::preset("B2").unwrap();
        let m = BraidMonoid::new(&sys);
        let (x, y, z) = (m.from_word(&a), m.from_word(&b), m.from_word(&c));
        prop_assert_eq!(m.mul(&m.mul(&x, &y), &z), m.mul(&x, &m.mul(&y, &z)));
        prop_assert_eq!(m.mul(&x, &m.unit()), x.clone());
        prop_assert!(m.left_divides(&x, &m.mul(&x, &y)));
        prop_assert_eq!(m.left_quotient(&x, &m.mul(&x, &y)), Some(y.clone()));
        prop_assert_eq!(m.reverse(&m.reverse(&x)), x.clone());
        prop_assert_eq!(m.reverse(&m.mul(&x, &y)), m.mul(&m.reverse(&y), &m.reverse(&x)));
        prop_assert_eq!(m.parse(&m.format_word(&x)).unwrap(), x.clone());
    }

    #[test]
    fn normal_form_is_left_weighted(w in proptest::collection::vec(0u8..2, 0..14)) {
        let sys = CoxeterSystem::preset("G2").unwrap();
        let m = BraidMonoid::new(&sys);
        let b = m.from_word(&w);
        for pair in b.factors().windows(2) {
            // every left descent of the next factor is a right descent of the previous one
            for s in sys.left_descents(pair[1]) {
                prop_assert!(sys.is_right_descent(pair[0], s));
            }
            prop_assert!(!pair[0].is_identity());
        }
    }
}

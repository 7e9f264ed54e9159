mod common;

use braidcycle::cocycle::{eval_gamma0, eval_sites, vanishing_bound};
use braidcycle::gauss::triple_sites;
use braidcycle::loop_engine::r3_rewrite;
use braidcycle::{Event, LaurentPoly, Normalization, TraceGraph, TripleType};
use common::*;
use proptest::prelude::*;

fn knot_for(seed: u64, ns: &[usize]) -> (braidcycle::BraidWord, usize) {
    let mut r = rng(seed);
    let n = ns[(seed % ns.len() as u64) as usize];
    let w = random_knot(&mut r, n, 2 + (seed >> 8) as usize % 9);
    (w, 1 + (seed >> 16) as usize % 2)
}

#[test]
fn doubled_move_is_a_trihedron() {
    let w = word(3, &[1, -2, 1, 2, 1, 1, 2, 1]);
    let base = rot(&w, 1);
    let mut lg = base.clone();
    let k = lg.events.iter().position(Event::is_r3).unwrap();
    let Event::R3 { position, ids, before, after } = lg.events[k].clone() else { unreachable!() };
    assert_eq!(r3_rewrite(after), Some(before));
    let back = Event::R3 { position, ids: [ids[2], ids[1], ids[0]], before: after, after: before };
    let again = Event::R3 { position, ids, before, after };
    lg.events.splice(k + 1..k + 1, [back, again]);
    lg.verify().unwrap();
    let g = TraceGraph::build(&lg).unwrap();
    assert_eq!(g.triple_count(), base.r3_count() + 2);
    assert!(
        g.is_trihedron(k_triple(&g, k + 1), k_triple(&g, k + 2))
            || g.is_trihedron(k_triple(&g, k), k_triple(&g, k + 1))
    );
    let e = g.detect_generalized_trihedrons();
    let plain = TraceGraph::build(&base).unwrap().detect_generalized_trihedrons();
    assert!(e.len() <= plain.len());
    let (s0, s1) = (triple_sites(&base).unwrap(), triple_sites(&lg).unwrap());
    for f in families(3) {
        let a = eval_sites(&s0, 3, &f, Normalization::Reduced).unwrap();
        let b = eval_sites(&s1, 3, &f, Normalization::Reduced).unwrap();
        assert_eq!(a, b, "{f}");
    }
}

fn k_triple(g: &TraceGraph, event: usize) -> usize {
    g.triples.iter().position(|t| t.event_index == event).unwrap()
}

#[test]
fn no_triples_means_empty_e() {
    let g = graph(&word(2, &[1, 1, 1]), 2);
    assert_eq!(g.triple_count(), 0);
    assert!(g.detect_generalized_trihedrons().is_empty());
    assert!(g.characters0().entries.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antisymmetry(seed in any::<u64>()) {
        let (w, l) = knot_for(seed, &[3, 4, 5, 6]);
        let sites = triple_sites(&rot(&w, l)).unwrap();
        for a in 1..w.n() {
            for b in 1..w.n() {
                for ty in types() {
                    prop_assert_eq!(eval_gamma0(&sites, a, b, ty), -eval_gamma0(&sites, b, a, ty));
                }
            }
        }
    }

    #[test]
    fn support(seed in any::<u64>()) {
        let (w, l) = knot_for(seed, &[3, 4, 5, 6]);
        let n = w.n();
        let sites = triple_sites(&rot(&w, l)).unwrap();
        for a in 1..n {
            for b in 1..n {
                if a + b <= n {
                    prop_assert_eq!(eval_gamma0(&sites, a, b, TripleType::Plus), 0);
                }
                if a + b >= n {
                    prop_assert_eq!(eval_gamma0(&sites, a, b, TripleType::Minus), 0);
                }
            }
        }
    }

    #[test]
    fn degree_zero_splits_into_characters(seed in any::<u64>()) {
        let (w, _) = knot_for(seed, &[3, 4, 5, 6]);
        let lg = rot(&w, 1);
        let g = TraceGraph::build(&lg).unwrap();
        let sites = triple_sites(&lg).unwrap();
        for a in 1..w.n() {
            for b in 1..w.n() {
                for ty in types() {
                    let total: i64 = g.characters0_of(a, b, ty).values().sum();
                    prop_assert_eq!(total, eval_gamma0(&sites, a, b, ty));
                }
            }
        }
    }

    #[test]
    fn degree_d_splits_into_characters(seed in any::<u64>()) {
        let (w, _) = knot_for(seed, &[3, 6]);
        let lg = rot(&w, 1);
        let g = TraceGraph::build(&lg).unwrap();
        let sites = triple_sites(&lg).unwrap();
        for f in families(w.n()).into_iter().filter(|f| f.degree() > 0) {
            for norm in [Normalization::Reduced, Normalization::Literal] {
                let total: LaurentPoly = g.characters_d(&lg, &f, norm).unwrap().values().cloned().sum();
                prop_assert_eq!(total, eval_sites(&sites, w.n(), &f, norm).unwrap());
            }
        }
    }

    #[test]
    fn literal_value_at_one_counts_signs(seed in any::<u64>()) {
        let (w, l) = knot_for(seed, &[3, 6]);
        let sites = triple_sites(&rot(&w, l)).unwrap();
        for f in families(w.n()).into_iter().filter(|f| f.degree() > 0) {
            let at_one = eval_sites(&sites, w.n(), &f, Normalization::Literal).unwrap().eval_at_one();
            let count: i64 = sites
                .iter()
                .filter(|(t, _)| braidcycle::cocycle::applies(&f, t, w.n()))
                .map(|(t, _)| t.sign as i64)
                .sum();
            prop_assert_eq!(at_one, count.into());
        }
    }

    #[test]
    fn vanishing_bound_holds(seed in any::<u64>()) {
        let (w, l) = knot_for(seed, &[3, 6]);
        let n = w.n();
        let bound = vanishing_bound(w.len(), n);
        let sites = triple_sites(&rot(&w, l)).unwrap();
        for d in [bound, bound + 1, bound + 2] {
            for s in [format!("degd-l:{d}"), format!("degd-h:{}", d + d % 2)] {
                let v = eval_sites(&sites, n, &fam(&s), Normalization::Reduced).unwrap();
                prop_assert!(v.is_zero(), "{} gave {}", s, v);
            }
        }
    }

    #[test]
    fn one_rotation_names_circles_by_marking(seed in any::<u64>()) {
        let (w, _) = knot_for(seed, &[2, 3, 4, 5, 6]);
        let g = graph(&w, 1);
        let mut marks: Vec<usize> = g.circles.iter().map(|c| c.marking()).collect();
        marks.sort_unstable();
        prop_assert_eq!(marks, (1..w.n()).collect::<Vec<_>>());
    }

    #[test]
    fn monodromy_has_order_dividing_l(seed in any::<u64>()) {
        let (w, _) = knot_for(seed, &[3, 4, 5]);
        let l = 1 + (seed >> 24) as usize % 3;
        let g = graph(&w, l);
        let m = g.monodromy().unwrap();
        let mut p = m.circle_perm.clone();
        for _ in 1..l {
            p = p.compose(&m.circle_perm);
        }
        prop_assert!((0..p.len()).all(|i| p.apply(i) == i));
        for (k, c) in g.circles.iter().enumerate() {
            prop_assert_eq!(g.circles[m.circle_perm.apply(k)].marking(), c.marking());
        }
    }
}

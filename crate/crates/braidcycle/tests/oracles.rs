mod common;

use braidcycle::gauss::{classify_all, marking};
use braidcycle::{BraidWord, GaussDiagram, MarkedDiagram, Permutation, TripleType};
use common::*;
use proptest::prelude::*;

/// Walks once around the closed knot and records, for every crossing, the
/// pass on which the knot enters it along the under and along the over strand.
fn passes(n: usize, w: &[i32]) -> Vec<(usize, usize)> {
    let mut seen = vec![(usize::MAX, usize::MAX); w.len()];
    let mut p = 0;
    for pass in 0..n {
        for (q, &g) in w.iter().enumerate() {
            let k = g.unsigned_abs() as usize - 1;
            if p != k && p != k + 1 {
                continue;
            }
            let over = (p == k) == (g > 0);
            if over {
                seen[q].1 = pass;
            } else {
                seen[q].0 = pass;
            }
            p = if p == k { k + 1 } else { k };
        }
    }
    seen
}

fn oracle_marking(n: usize, w: &[i32], q: usize) -> usize {
    let (under, over) = passes(n, w)[q];
    (over + n - under) % n
}

/// Image of `i` under the closure permutation, by composing transpositions.
fn by_hand(w: &BraidWord, i: usize) -> usize {
    w.letters().iter().fold(i, |p, &g| {
        let k = g.unsigned_abs() as usize - 1;
        if p == k {
            k + 1
        } else if p == k + 1 {
            k
        } else {
            p
        }
    })
}

#[test]
fn cable_of_one_letter() {
    let c = word(2, &[1]).cable(2, None).unwrap();
    assert_eq!((c.n(), c.letters()), (4, &[2, 1, 3, 2][..]));
    let p = c.closure_permutation();
    assert_eq!((p.apply(0), p.apply(1)), (2, 3));
}

#[test]
fn permutation_by_hand() {
    assert!(word(3, &[1, -2, 1, -2]).is_knot());
    let w = word(3, &[1, -2, 1, -2]);
    let p = w.closure_permutation();
    for i in 0..3 {
        assert_eq!(p.apply(i), by_hand(&w, i));
    }
}

#[test]
fn markings_of_a_small_closure() {
    let w = [1, -2, 1, -2];
    let d = MarkedDiagram::new(word(3, &w));
    for q in 0..w.len() {
        assert_eq!(marking(&d, d.ids[q]), Some(oracle_marking(3, &w, q)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn markings_match_the_knot_walk(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 + (seed % 6) as usize;
        let w = random_knot(&mut r, n, 3 + (seed >> 8) as usize % 12);
        let g = GaussDiagram::of(&MarkedDiagram::new(w.clone())).unwrap();
        for (q, a) in g.arrows.iter().enumerate() {
            prop_assert_eq!(a.marking, oracle_marking(n, w.letters(), q));
            prop_assert!((1..n).contains(&a.marking));
        }
    }

    #[test]
    fn closure_permutation_matches_transpositions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 + (seed % 7) as usize;
        let w = random_word(&mut r, n, (seed >> 8) as usize % 15);
        let p = w.closure_permutation();
        for i in 0..n {
            prop_assert_eq!(p.apply(i), by_hand(&w, i));
        }
        let cycle = Permutation::from_images((0..n).map(|i| by_hand(&w, i)).collect()).unwrap();
        prop_assert_eq!(w.is_knot(), cycle.is_single_cycle());
    }

    #[test]
    fn cables_move_bundles_in_parallel(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 + (seed % 4) as usize;
        let k = 1 + (seed >> 4) as usize % 3;
        let w = random_word(&mut r, n, 1 + (seed >> 8) as usize % 6);
        let c = w.cable(k, None).unwrap();
        prop_assert_eq!(c.len(), k * k * w.len());
        let (p, q) = (w.closure_permutation(), c.closure_permutation());
        for i in 0..n {
            for s in 0..k {
                prop_assert_eq!(q.apply(k * i + s), k * p.apply(i) + s);
            }
        }
    }

    #[test]
    fn triangle_markings_close_up(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 3 + (seed % 3) as usize;
        let w = random_knot(&mut r, n, 3 + (seed >> 8) as usize % 5);
        let lg = rot(&w, 1);
        for t in classify_all(&lg).unwrap() {
            let (d, _) = lg.snapshot_at(t.event_index).unwrap();
            let m = |k: usize| oracle_marking(n, d.letters(), d.position_of(t.triangle[k].id).unwrap());
            let (lm, mh, lh) = (m(0), m(1), m(2));
            prop_assert_eq!((lm + mh) % n, lh % n);
            let want = if lm + mh == lh { TripleType::Minus } else { TripleType::Plus };
            prop_assert_eq!(t.global_type, want);
            let (a, b) = if want == TripleType::Minus { (lm, mh) } else { (mh, lm) };
            prop_assert_eq!((t.a, t.b), (a, b));
        }
    }
}

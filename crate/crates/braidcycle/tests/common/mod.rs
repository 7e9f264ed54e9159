#![allow(dead_code)]

use braidcycle::{BraidWord, EventLog, Family, LaurentPoly, TraceGraph, TripleType};
use rand::{rngs::StdRng, Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn letter(rng: &mut StdRng, n: usize) -> i32 {
    let g = rng.gen_range(1..n as i32);
    if rng.gen() {
        g
    } else {
        -g
    }
}

/// A random word of about `c` letters on `n` strands whose closure is a knot.
pub fn random_knot(rng: &mut StdRng, n: usize, c: usize) -> BraidWord {
    let c = c.max(n - 1);
    let c = if (c + n).is_multiple_of(2) { c + 1 } else { c };
    loop {
        let w: Vec<i32> = (0..c).map(|_| letter(rng, n)).collect();
        let b = BraidWord::new(n, w).unwrap();
        if b.is_knot() {
            return b;
        }
    }
}

pub fn random_word(rng: &mut StdRng, n: usize, len: usize) -> BraidWord {
    BraidWord::new(n, (0..len).map(|_| letter(rng, n)).collect()).unwrap()
}

pub fn word(n: usize, w: &[i32]) -> BraidWord {
    BraidWord::new(n, w.to_vec()).unwrap()
}

pub fn rot(w: &BraidWord, l: usize) -> EventLog {
    EventLog::generate(w, l).unwrap()
}

pub fn graph(w: &BraidWord, l: usize) -> TraceGraph {
    TraceGraph::build(&rot(w, l)).unwrap()
}

pub fn fam(s: &str) -> Family {
    s.parse().unwrap()
}

pub fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().copied())
}

/// Every family that is defined on `n` strands.
pub fn families(n: usize) -> Vec<Family> {
    let mut out = Vec::new();
    for a in 1..n {
        for b in 1..n {
            for ty in ["+", "-"] {
                out.push(fam(&format!("deg0:({a},{b}){ty}")));
            }
        }
    }
    if n.is_multiple_of(3) {
        for s in ["degd-l:1", "degd-l:2", "degd-l:3", "degd-h:2"] {
            out.push(fam(s));
            out.push(fam(&format!("{s}:mirror")));
        }
    }
    if n >= 4 {
        out.push(fam("deg1-nm2"));
    }
    out
}

pub fn types() -> [TripleType; 2] {
    [TripleType::Plus, TripleType::Minus]
}

/// The inverse of a word, as a plain letter list.
pub fn inverse(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|g| -g).collect()
}

/// Bigelow's five-strand braid with trivial Burau image.
pub fn bigelow() -> Vec<i32> {
    let psi1 = [-3, 2, 1, 1, 2, 4, 4, 4, 3, 2];
    let psi2 = [-4, 3, 2, -1, -1, 2, 1, 1, 2, 2, 1, 4, 4, 4, 4, 4];
    let mut a = inverse(&psi1);
    a.push(4);
    a.extend(psi1);
    let mut b = inverse(&psi2);
    b.extend([4, 3, 2, 1, 1, 2, 3, 4]);
    b.extend(psi2);
    let mut out = inverse(&a);
    out.extend(inverse(&b));
    out.extend(a);
    out.extend(b);
    out
}

//! One-cocycle polynomials evaluated on the canonical loop.
//!
//! A triple crossing of the right marked type contributes `sign·x^E` where
//! `E` counts, with writhe products, the extra arrows of the Gauss diagram
//! sitting in a prescribed configuration around the triangle of the triple.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::LaurentPoly;
use crate::gauss::{triple_sites, GaussDiagram, TripleEvent, TripleType};
use crate::loop_engine::{CrossingId, EventLog, LoopError, MarkedDiagram};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("unrecognized family selector `{0}`")]
    Syntax(String),
    #[error("this family needs n divisible by 3, got n = {0}")]
    NotDivisibleBy3(usize),
    #[error("the h-family is defined only for even degree, got {0}")]
    OddDegree(usize),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("this family needs n > 3, got n = {0}")]
    SmallN(usize),
    #[error("markings ({a},{b}) out of range for n = {n}")]
    Marking { a: usize, b: usize, n: usize },
    #[error("no mirror variant for `{0}`")]
    NoMirror(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    Deg0 {
        a: usize,
        b: usize,
        ty: TripleType,
    },
    /// Bunches around the lowest strand's arrows (the "l" family).
    DegDL {
        d: usize,
    },
    /// Bunches around the highest strand's arrows (the "h" family).
    DegDH {
        d: usize,
    },
    Deg1Nm2,
}

/// A configuration family together with the mirror flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Family {
    pub kind: FamilyKind,
    pub mirror: bool,
}

impl Family {
    pub fn new(kind: FamilyKind) -> Self {
        Self { kind, mirror: false }
    }

    pub fn mirrored(self) -> Self {
        Self { mirror: true, ..self }
    }

    pub fn degree(&self) -> usize {
        match self.kind {
            FamilyKind::Deg0 { .. } => 0,
            FamilyKind::DegDL { d } | FamilyKind::DegDH { d } => d,
            FamilyKind::Deg1Nm2 => 1,
        }
    }

    /// Checks the family makes sense on `n` strands.
    pub fn validate(&self, n: usize) -> Result<(), FamilyError> {
        match self.kind {
            FamilyKind::Deg0 { a, b, .. } => {
                if self.mirror {
                    return Err(FamilyError::NoMirror(self.to_string()));
                }
                if a == 0 || b == 0 || a >= n || b >= n {
                    return Err(FamilyError::Marking { a, b, n });
                }
            }
            FamilyKind::DegDL { d } | FamilyKind::DegDH { d } => {
                if d == 0 {
                    return Err(FamilyError::ZeroDegree);
                }
                if !n.is_multiple_of(3) {
                    return Err(FamilyError::NotDivisibleBy3(n));
                }
                if matches!(self.kind, FamilyKind::DegDH { .. }) && d % 2 == 1 {
                    return Err(FamilyError::OddDegree(d));
                }
            }
            FamilyKind::Deg1Nm2 => {
                if self.mirror {
                    return Err(FamilyError::NoMirror(self.to_string()));
                }
                if n <= 3 {
                    return Err(FamilyError::SmallN(n));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::Deg0 { a, b, ty } => write!(f, "deg0:({a},{b}){ty}")?,
            FamilyKind::DegDL { d } => write!(f, "degd-l:{d}")?,
            FamilyKind::DegDH { d } => write!(f, "degd-h:{d}")?,
            FamilyKind::Deg1Nm2 => write!(f, "deg1-nm2")?,
        }
        if self.mirror {
            write!(f, ":mirror")?;
        }
        Ok(())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::Syntax(s.to_string());
        let t = s.trim();
        let (body, mirror) = match t.strip_suffix(":mirror") {
            Some(b) => (b, true),
            None => (t, false),
        };
        let kind = if body == "deg1-nm2" {
            FamilyKind::Deg1Nm2
        } else if let Some(d) = body.strip_prefix("degd-l:") {
            FamilyKind::DegDL { d: d.parse().map_err(|_| bad())? }
        } else if let Some(d) = body.strip_prefix("degd-h:") {
            FamilyKind::DegDH { d: d.parse().map_err(|_| bad())? }
        } else if let Some(rest) = body.strip_prefix("deg0:(") {
            let (ab, ty) = if let Some(ab) = rest.strip_suffix(")+") {
                (ab, TripleType::Plus)
            } else if let Some(ab) = rest.strip_suffix(")-") {
                (ab, TripleType::Minus)
            } else {
                return Err(bad());
            };
            let (a, b) = ab.split_once(',').ok_or_else(bad)?;
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim().parse().map_err(|_| bad())?;
            FamilyKind::Deg0 { a, b, ty }
        } else {
            return Err(bad());
        };
        Ok(Self { kind, mirror })
    }
}

/// How triples without a configuration contribute.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Normalization {
    /// Triples whose exponent is zero are left out.
    #[default]
    Reduced,
    /// Every triple of the family's type contributes, `sign·x⁰` if unmatched.
    Literal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantResult {
    pub value: LaurentPoly,
    pub family: Family,
    pub l: usize,
    pub normalization: Normalization,
}

/// Arc of the knot circle between two triangle endpoints, named by the
/// vertex it starts at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Arc {
    L,
    M,
    H,
}

impl Arc {
    /// Predecessor in the cyclic order `l → h → m → l`.
    fn prev(self) -> Arc {
        match self {
            Arc::H => Arc::L,
            Arc::M => Arc::H,
            Arc::L => Arc::M,
        }
    }

    fn swap_lh(self) -> Arc {
        match self {
            Arc::L => Arc::H,
            Arc::H => Arc::L,
            Arc::M => Arc::M,
        }
    }
}

/// A non-triangle arrow placed relative to the triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chord {
    pub id: CrossingId,
    pub writhe: i32,
    pub marking: usize,
    /// Arc and offset from its start of the under-cross.
    pub tail: (Arc, usize),
    /// Arc and offset from its start of the over-cross.
    pub head: (Arc, usize),
}

/// The extra arrows of `g` located on the arcs cut out by the triangle of `t`.
pub fn chords(t: &TripleEvent, g: &GaussDiagram) -> Vec<Chord> {
    let c = g.arrows.len();
    let total = g.circle_length;
    let vertex = |role: usize| t.passes[role] * c + t.position + 1;
    let keys = [(Arc::L, vertex(t.roles.l)), (Arc::M, vertex(t.roles.m)), (Arc::H, vertex(t.roles.h))];
    let locate = |p: usize| {
        keys.iter().map(|&(arc, k)| (arc, (p + total - k) % total)).min_by_key(|&(_, off)| off).expect("three vertices")
    };
    g.arrows
        .iter()
        .filter(|a| !(t.position..t.position + 3).contains(&a.letter))
        .map(|a| Chord {
            id: a.id,
            writhe: a.writhe,
            marking: a.marking,
            tail: locate(a.under_pos),
            head: locate(a.over_pos),
        })
        .collect()
}

/// Reverses every chord and exchanges the `l` and `h` arcs; markings become
/// complementary.
fn mirror_chords(chords: &[Chord], n: usize) -> Vec<Chord> {
    chords
        .iter()
        .map(|ch| Chord {
            tail: (ch.head.0.swap_lh(), ch.head.1),
            head: (ch.tail.0.swap_lh(), ch.tail.1),
            marking: n - ch.marking,
            ..*ch
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    In,
    Out,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::In => Dir::Out,
            Dir::Out => Dir::In,
        }
    }
}

/// Chords joining the arc ending at `x` with the arc starting at `x`,
/// sorted along the incoming arc. `In` chords point into `x`'s arc.
fn around(chords: &[Chord], x: Arc, n: usize) -> Vec<(usize, Dir, &Chord)> {
    let p = x.prev();
    let mut out: Vec<_> = chords
        .iter()
        .filter_map(|ch| {
            if ch.tail.0 == p && ch.head.0 == x && ch.marking == n / 3 {
                Some((ch.tail.1, Dir::In, ch))
            } else if ch.head.0 == p && ch.tail.0 == x && ch.marking == 2 * n / 3 {
                Some((ch.head.1, Dir::Out, ch))
            } else {
                None
            }
        })
        .collect();
    out.sort_by_key(|&(off, _, _)| off);
    out
}

fn wanderers(chords: &[Chord], n: usize) -> impl Iterator<Item = &Chord> {
    chords.iter().filter(move |ch| ch.tail.0 == Arc::M && ch.head.0 == Arc::L && ch.marking == n / 3)
}

/// Σ over alternating subsequences of length `d` starting with `first`
/// of the product of writhes.
fn alternating_sum(bunch: &[(usize, Dir, &Chord)], d: usize, first: Dir) -> i64 {
    let mut dp = vec![0i64; d + 1];
    dp[0] = 1;
    for &(_, dir, ch) in bunch {
        for k in (1..=d).rev() {
            let want = if k % 2 == 1 { first } else { first.flip() };
            if dir == want {
                dp[k] += dp[k - 1] * ch.writhe as i64;
            }
        }
    }
    dp[d]
}

fn alternating_tuples<'a>(bunch: &[(usize, Dir, &'a Chord)], d: usize, first: Dir) -> Vec<Vec<&'a Chord>> {
    fn go<'a>(
        bunch: &[(usize, Dir, &'a Chord)],
        from: usize,
        want: Dir,
        left: usize,
        acc: &mut Vec<&'a Chord>,
        out: &mut Vec<Vec<&'a Chord>>,
    ) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in from..bunch.len() {
            if bunch[i].1 == want {
                acc.push(bunch[i].2);
                go(bunch, i + 1, want.flip(), left - 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(bunch, 0, first, d, &mut Vec::new(), &mut out);
    out
}

/// One matched configuration: its weight `ε·Π w` and the ids filling its
/// slots (wandering arrow first, then the bunch in order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Match {
    pub weight: i64,
    pub slots: Vec<CrossingId>,
}

fn product(tuple: &[&Chord]) -> i64 {
    tuple.iter().map(|c| c.writhe as i64).product()
}

/// Whether `t` is a triple the family sums over.
pub fn applies(family: &Family, t: &TripleEvent, n: usize) -> bool {
    match family.kind {
        FamilyKind::Deg0 { a, b, ty } => t.marked_type() == (ty, a, b),
        FamilyKind::DegDL { .. } | FamilyKind::DegDH { .. } => {
            if family.mirror {
                t.marked_type() == (TripleType::Minus, n / 3, n / 3)
            } else {
                t.marked_type() == (TripleType::Plus, 2 * n / 3, 2 * n / 3)
            }
        }
        FamilyKind::Deg1Nm2 => t.marked_type() == (TripleType::Minus, n - 2, 1),
    }
}

fn family_chords(family: &Family, t: &TripleEvent, g: &GaussDiagram) -> Vec<Chord> {
    let ch = chords(t, g);
    if family.mirror {
        mirror_chords(&ch, g.n)
    } else {
        ch
    }
}

/// The exponent `Σ_i ε_i Σ_{D_i} Π w` of an applicable triple.
pub fn exponent(family: &Family, t: &TripleEvent, g: &GaussDiagram) -> i64 {
    let n = g.n;
    let ch = family_chords(family, t, g);
    match family.kind {
        FamilyKind::Deg0 { .. } => 0,
        FamilyKind::DegDL { d } => {
            let bunch = around(&ch, Arc::H, n);
            if d % 2 == 0 {
                alternating_sum(&bunch, d, Dir::Out)
            } else {
                let wander: i64 = wanderers(&ch, n).map(|c| c.writhe as i64).sum();
                alternating_sum(&bunch, d, Dir::In) - alternating_sum(&bunch, d - 1, Dir::Out) * wander
            }
        }
        FamilyKind::DegDH { d } => alternating_sum(&around(&ch, Arc::L, n), d, Dir::In),
        FamilyKind::Deg1Nm2 => ch
            .iter()
            .filter(|c| c.marking == 1)
            .map(|c| match (c.tail.0, c.head.0) {
                (Arc::L, Arc::M) => c.writhe as i64,
                (Arc::M, Arc::H) => -c.writhe as i64,
                _ => 0,
            })
            .sum(),
    }
}

/// All configurations of an applicable triple, one entry per matched tuple.
pub fn matches(family: &Family, t: &TripleEvent, g: &GaussDiagram) -> Vec<Match> {
    let n = g.n;
    let ch = family_chords(family, t, g);
    let tuples = |bunch: &[(usize, Dir, &Chord)], d, first, sign: i64| -> Vec<Match> {
        alternating_tuples(bunch, d, first)
            .into_iter()
            .map(|tup| Match { weight: sign * product(&tup), slots: tup.iter().map(|c| c.id).collect() })
            .collect()
    };
    match family.kind {
        FamilyKind::Deg0 { .. } => Vec::new(),
        FamilyKind::DegDL { d } => {
            let bunch = around(&ch, Arc::H, n);
            if d % 2 == 0 {
                tuples(&bunch, d, Dir::Out, 1)
            } else {
                let mut out = tuples(&bunch, d, Dir::In, 1);
                for base in alternating_tuples(&bunch, d - 1, Dir::Out) {
                    for w in wanderers(&ch, n) {
                        let mut slots = vec![w.id];
                        slots.extend(base.iter().map(|c| c.id));
                        out.push(Match { weight: -product(&base) * w.writhe as i64, slots });
                    }
                }
                out
            }
        }
        FamilyKind::DegDH { d } => tuples(&around(&ch, Arc::L, n), d, Dir::In, 1),
        FamilyKind::Deg1Nm2 => ch
            .iter()
            .filter(|c| c.marking == 1)
            .filter_map(|c| match (c.tail.0, c.head.0) {
                (Arc::L, Arc::M) => Some(Match { weight: c.writhe as i64, slots: vec![c.id] }),
                (Arc::M, Arc::H) => Some(Match { weight: -c.writhe as i64, slots: vec![c.id] }),
                _ => None,
            })
            .collect(),
    }
}

/// Signed count of the triples of marked type `(a,b)^ty`.
pub fn eval_gamma0(sites: &[(TripleEvent, GaussDiagram)], a: usize, b: usize, ty: TripleType) -> i64 {
    sites.iter().filter(|(t, _)| t.marked_type() == (ty, a, b)).map(|(t, _)| t.sign as i64).sum()
}

/// The polynomial of `family` over pre-classified triple sites.
pub fn eval_sites(
    sites: &[(TripleEvent, GaussDiagram)],
    n: usize,
    family: &Family,
    norm: Normalization,
) -> Result<LaurentPoly, FamilyError> {
    family.validate(n)?;
    if let FamilyKind::Deg0 { a, b, ty } = family.kind {
        let v = eval_gamma0(sites, a, b, ty);
        return Ok(LaurentPoly::from_terms([(0, v)]));
    }
    let mut p = LaurentPoly::zero();
    for (t, g) in sites.iter().filter(|(t, _)| applies(family, t, n)) {
        let e = exponent(family, t, g);
        if e != 0 || norm == Normalization::Literal {
            p += LaurentPoly::monomial(t.sign, e);
        }
    }
    Ok(p)
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Loop(#[from] LoopError),
}

/// Evaluates `family` on a loop.
pub fn evaluate(log: &EventLog, family: &Family, norm: Normalization) -> Result<InvariantResult, EvalError> {
    family.validate(log.n())?;
    let sites = triple_sites(log)?;
    let value = eval_sites(&sites, log.n(), family, norm)?;
    Ok(InvariantResult { value, family: *family, l: log.l, normalization: norm })
}

/// `Γ^d` of the l- or h-family on a loop.
pub fn eval_gamma_d(log: &EventLog, family: &Family) -> Result<LaurentPoly, EvalError> {
    Ok(evaluate(log, family, Normalization::Reduced)?.value)
}

/// `Γ¹_{(n-2,1)⁻}` on a loop.
pub fn eval_gamma1_nm2(log: &EventLog) -> Result<LaurentPoly, EvalError> {
    eval_gamma_d(log, &Family::new(FamilyKind::Deg1Nm2))
}

/// Sum of the writhes of the crossings with marking `a`.
pub fn w_a(d: &MarkedDiagram, a: usize) -> Result<i64, LoopError> {
    let g = GaussDiagram::of(d)?;
    Ok(g.arrows.iter().filter(|x| x.marking == a).map(|x| x.writhe as i64).sum())
}

/// Degree from which every one-cocycle polynomial vanishes on braids with
/// `c` crossings and `n` strands.
pub fn vanishing_bound(c: usize, n: usize) -> usize {
    c + n * n - n - 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;

    fn rot(n: usize, w: &[i32]) -> EventLog {
        EventLog::generate(&BraidWord::new(n, w.to_vec()).unwrap(), 1).unwrap()
    }

    fn fam(s: &str) -> Family {
        s.parse().unwrap()
    }

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn selectors_round_trip() {
        for s in ["deg0:(1,2)-", "deg0:(2,3)+", "degd-l:3", "degd-h:2:mirror", "deg1-nm2"] {
            assert_eq!(fam(s).to_string(), s);
        }
        for s in ["deg0:(1,2)", "degd-x:1", "deg0(1,2)+", "degd-l:", "deg1-nm2:mirror:mirror"] {
            assert!(s.parse::<Family>().is_err(), "{s}");
        }
    }

    #[test]
    fn validation() {
        assert_eq!(fam("degd-l:1").validate(4), Err(FamilyError::NotDivisibleBy3(4)));
        assert_eq!(fam("degd-h:3").validate(3), Err(FamilyError::OddDegree(3)));
        assert_eq!(fam("degd-l:0").validate(3), Err(FamilyError::ZeroDegree));
        assert_eq!(fam("deg1-nm2").validate(3), Err(FamilyError::SmallN(3)));
        assert!(fam("deg0:(1,3)+").validate(3).is_err());
        assert!(fam("deg1-nm2:mirror").validate(5).is_err());
        assert!(fam("degd-h:4:mirror").validate(6).is_ok());
    }

    #[test]
    fn four_strand_gamma0() {
        let lg = rot(4, &[1, -2, -3]);
        let v = |s: &str| evaluate(&lg, &fam(s), Normalization::Reduced).unwrap().value;
        assert_eq!(v("deg0:(1,2)-"), poly(&[(0, -1)]));
        assert_eq!(v("deg0:(2,3)+"), poly(&[(0, -1)]));
        assert_eq!(v("deg0:(2,1)-"), poly(&[(0, 1)]));
        assert_eq!(v("deg0:(3,2)+"), poly(&[(0, 1)]));
        assert!(v("deg0:(2,2)+").is_zero());
    }

    #[test]
    fn three_strand_gamma_d() {
        let lg = rot(3, &[1, -2, 1, 2, 1, 1, 2, 1]);
        assert_eq!(eval_gamma_d(&lg, &fam("degd-l:2")).unwrap(), poly(&[(1, 1)]));
        assert_eq!(eval_gamma_d(&lg, &fam("degd-l:1")).unwrap(), poly(&[(1, 1), (-1, -1)]));
    }

    #[test]
    fn three_strand_all_families() {
        let lg = rot(3, &[1, 1, 1, 2, 2, 1, 2, 1]);
        let v = |s: &str| eval_gamma_d(&lg, &fam(s)).unwrap();
        assert_eq!(v("degd-h:4"), poly(&[(1, -1)]));
        assert_eq!(v("degd-h:2"), poly(&[(3, -1), (1, -1)]));
        assert_eq!(v("degd-l:4"), poly(&[(1, 1)]));
        assert_eq!(v("degd-l:2"), poly(&[(3, 1), (1, 1)]));
        assert_eq!(v("degd-l:1"), poly(&[(2, 1), (1, 1), (-1, -1), (-2, -1)]));
    }

    #[test]
    fn five_letter_gamma1_nm2() {
        let lg = rot(4, &[3, 2, 3, 1, 2]);
        assert_eq!(eval_gamma1_nm2(&lg).unwrap(), poly(&[(1, 1)]));
    }

    #[test]
    fn literal_normalization_counts_all_triples() {
        let lg = rot(3, &[1, 1, 1, 2, 2, 1, 2, 1]);
        let sites = triple_sites(&lg).unwrap();
        let f = fam("degd-l:2");
        let lit = eval_sites(&sites, 3, &f, Normalization::Literal).unwrap();
        let red = eval_sites(&sites, 3, &f, Normalization::Reduced).unwrap();
        assert_eq!(lit.without_constant(), red.without_constant());
        let count: i64 = sites.iter().filter(|(t, _)| applies(&f, t, 3)).map(|(t, _)| t.sign as i64).sum();
        assert_eq!(lit.eval_at_one(), count.into());
    }

    #[test]
    fn matches_sum_to_exponent() {
        let lg = rot(3, &[1, 1, 1, 2, 2, 1, 2, 1]);
        for (t, g) in triple_sites(&lg).unwrap() {
            for s in ["degd-l:1", "degd-l:2", "degd-l:3", "degd-h:2", "degd-l:1:mirror", "degd-h:2:mirror"] {
                let f = fam(s);
                let by_match: i64 = matches(&f, &t, &g).iter().map(|m| m.weight).sum();
                assert_eq!(by_match, exponent(&f, &t, &g), "{s}");
                assert!(matches(&f, &t, &g).iter().all(|m| m.slots.len() == f.degree()));
            }
        }
    }

    #[test]
    fn chords_avoid_triangle() {
        let lg = rot(3, &[1, -2, 1, 2, 1, 1, 2, 1]);
        for (t, g) in triple_sites(&lg).unwrap() {
            let ch = chords(&t, &g);
            assert_eq!(ch.len(), g.arrows.len() - 3);
            let tri: Vec<CrossingId> = t.triangle.iter().map(|a| a.id).collect();
            assert!(ch.iter().all(|c| !tri.contains(&c.id)));
        }
    }

    #[test]
    fn writhe_sums() {
        let d = MarkedDiagram::new(BraidWord::new(2, vec![1, 1, 1]).unwrap());
        assert_eq!(w_a(&d, 1).unwrap(), 3);
        for n in 2..7 {
            let d = MarkedDiagram::new(BraidWord::new(n, (1..n as i32).collect()).unwrap());
            for a in 1..n {
                assert_eq!(w_a(&d, a).unwrap(), w_a(&d, n - a).unwrap());
            }
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(vanishing_bound(3, 4), 13);
        assert_eq!(vanishing_bound(1, 2), 1);
    }
}

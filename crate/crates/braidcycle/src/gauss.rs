//! Gauss diagrams of closed braids and classification of triple crossings.
//!
//! The knot circle is the concatenation of the `n` passes of the strand
//! through the word; pass `P` starts where pass `P-1` ends, pass 0 at
//! position 0. A point of pass `P` at letter `q` has circle position
//! `P·c + q`. Arrows run from the under-cross to the over-cross, and at a
//! positive letter the left strand is over.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::loop_engine::{CrossingId, Event, EventLog, LoopError, MarkedDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussArrow {
    pub id: CrossingId,
    /// Index of the crossing's letter in the word.
    pub letter: usize,
    pub under_pos: usize,
    pub over_pos: usize,
    pub writhe: i32,
    pub marking: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussDiagram {
    pub n: usize,
    pub circle_length: usize,
    /// One arrow per letter, in word order.
    pub arrows: Vec<GaussArrow>,
}

/// Pass index of the strands at positions `k, k+1` entering each letter.
fn letter_passes(n: usize, letters: &[i32]) -> Vec<(usize, usize)> {
    let mut at: Vec<usize> = (0..n).collect();
    for &g in letters {
        let k = g.unsigned_abs() as usize - 1;
        at.swap(k, k + 1);
    }
    // at[final position] = starting position; pass P+1 starts where P ends
    let mut ends = vec![0; n];
    for (fin, &start) in at.iter().enumerate() {
        ends[start] = fin;
    }
    let mut pass_at = vec![0; n];
    let mut pos = 0;
    for pass in 0..n {
        pass_at[pos] = pass;
        pos = ends[pos];
    }
    letters
        .iter()
        .map(|&g| {
            let k = g.unsigned_abs() as usize - 1;
            let here = (pass_at[k], pass_at[k + 1]);
            pass_at.swap(k, k + 1);
            here
        })
        .collect()
}

impl GaussDiagram {
    pub fn of(d: &MarkedDiagram) -> Result<Self, LoopError> {
        if !d.word.is_knot() {
            return Err(LoopError::NotKnot);
        }
        Ok(Self::from_parts(d.n(), d.letters(), &d.ids))
    }

    /// Assumes the closure is a knot.
    pub(crate) fn from_parts(n: usize, letters: &[i32], ids: &[CrossingId]) -> Self {
        let c = letters.len();
        let arrows = letter_passes(n, letters)
            .into_iter()
            .enumerate()
            .map(|(q, (left, right))| {
                let writhe = if letters[q] > 0 { 1 } else { -1 };
                let (over, under) = if writhe > 0 { (left, right) } else { (right, left) };
                GaussArrow {
                    id: ids[q],
                    letter: q,
                    under_pos: under * c + q,
                    over_pos: over * c + q,
                    writhe,
                    marking: (over + n - under) % n,
                }
            })
            .collect();
        Self { n, circle_length: n * c, arrows }
    }

    pub fn arrow(&self, id: CrossingId) -> Option<&GaussArrow> {
        self.arrows.iter().find(|a| a.id == id)
    }

    /// Winding number of the loop that runs forward along the circle from the
    /// under-cross of the first jump and switches strands at every jump, i.e.
    /// the component through that point of the oriented smoothing at `jumps`.
    /// With no jumps this is the whole knot.
    pub fn loop_homology(&self, jumps: &[CrossingId]) -> usize {
        let c = self.circle_length / self.n;
        let chosen: Vec<&GaussArrow> = jumps.iter().filter_map(|&id| self.arrow(id)).collect();
        let Some(first) = chosen.first() else {
            return self.n;
        };
        let mut partner = std::collections::BTreeMap::new();
        for a in &chosen {
            partner.insert(a.under_pos, a.over_pos);
            partner.insert(a.over_pos, a.under_pos);
        }
        let start = first.under_pos;
        let total = self.circle_length;
        let mut cur = start;
        let mut travelled = 0;
        loop {
            let next = partner
                .range(cur + 1..)
                .next()
                .or_else(|| partner.range(..=cur).next())
                .map(|(&p, _)| p)
                .expect("nonempty jump set");
            travelled += (next + total - cur - 1) % total + 1;
            cur = partner[&next];
            if cur == start {
                break;
            }
        }
        travelled / c
    }
}

/// Homological marking of crossing `id` in `d`.
pub fn marking(d: &MarkedDiagram, id: CrossingId) -> Option<usize> {
    let q = d.position_of(id)?;
    GaussDiagram::of(d).ok().map(|g| g.arrows[q].marking)
}

/// The two unmarked global types of triple crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TripleType {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for TripleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TripleType::Plus => "+",
            TripleType::Minus => "-",
        })
    }
}

/// Which of the three strands (0 = leftmost at the move) is highest,
/// middle and lowest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Roles {
    pub h: usize,
    pub m: usize,
    pub l: usize,
}

/// A classified Reidemeister III move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleEvent {
    pub event_index: usize,
    /// Word position of the first of the three letters.
    pub position: usize,
    pub global_type: TripleType,
    pub a: usize,
    pub b: usize,
    pub sign: i32,
    pub roles: Roles,
    /// Passes of the strands at the three positions, left to right.
    pub passes: [usize; 3],
    /// Arrows between the strand pairs `(l,m)`, `(m,h)`, `(l,h)`.
    pub triangle: [GaussArrow; 3],
}

impl TripleEvent {
    /// Markings of the `(l,m)`, `(m,h)` and `(l,h)` arrows.
    pub fn markings(&self) -> [usize; 3] {
        self.triangle.map(|a| a.marking)
    }

    /// Ids of the arrows carrying the markings `a`, `b` and the third one.
    pub fn slot_ids(&self) -> [CrossingId; 3] {
        let [lm, mh, lh] = self.triangle.map(|a| a.id);
        match self.global_type {
            TripleType::Minus => [lm, mh, lh],
            TripleType::Plus => [mh, lm, lh],
        }
    }

    pub fn marked_type(&self) -> (TripleType, usize, usize) {
        (self.global_type, self.a, self.b)
    }
}

/// Classifies the braid relation applied at `pos` of `d`.
pub fn classify_at(d: &MarkedDiagram, pos: usize, event_index: usize) -> TripleEvent {
    let gauss = GaussDiagram::from_parts(d.n(), d.letters(), &d.ids);
    classify_in(&gauss, d.letters(), pos, event_index)
}

pub(crate) fn classify_in(gauss: &GaussDiagram, letters: &[i32], pos: usize, event_index: usize) -> TripleEvent {
    let n = gauss.n;
    let c = letters.len();
    let (x, y) = (letters[pos], letters[pos + 1]);
    let ar = |q: usize| gauss.arrows[q];
    let pass_of = |a: &GaussArrow, left: bool| {
        let (u, o) = (a.under_pos / c, a.over_pos / c);
        match (a.writhe > 0, left) {
            (true, true) | (false, false) => o,
            _ => u,
        }
    };
    // strand pairs (left index, right index) of the three letters
    let (pattern, pairs) =
        if x.abs() < y.abs() { (1, [(0, 1), (0, 2), (1, 2)]) } else { (-1, [(1, 2), (0, 2), (0, 1)]) };
    let mut passes = [0; 3];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        passes[i] = pass_of(&ar(pos + k), true);
        passes[j] = pass_of(&ar(pos + k), false);
    }
    let mut above = [0; 3];
    let mut arrow_of = [[None; 3]; 3];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let top = if letters[pos + k] > 0 { i } else { j };
        above[top] += 1;
        arrow_of[i][j] = Some(ar(pos + k));
        arrow_of[j][i] = Some(ar(pos + k));
    }
    let find = |score| (0..3).find(|&s| above[s] == score).expect("heights are a total order");
    let roles = Roles { h: find(2), m: find(1), l: find(0) };
    let (ph, pm, pl) = (passes[roles.h], passes[roles.m], passes[roles.l]);
    let lm = (pm + n - pl) % n;
    let mh = (ph + n - pm) % n;
    let lh = (ph + n - pl) % n;
    let global_type = if lm + mh == lh { TripleType::Minus } else { TripleType::Plus };
    debug_assert!(lm + mh == lh || lm + mh == lh + n);
    let (a, b) = match global_type {
        TripleType::Minus => (lm, mh),
        TripleType::Plus => (mh, lm),
    };
    let middle = if roles.m == 1 { -1 } else { 1 };
    let sign = -pattern * middle;
    let tri = |u: usize, v: usize| arrow_of[u][v].expect("all pairs cross");
    TripleEvent {
        event_index,
        position: pos,
        global_type,
        a,
        b,
        sign,
        roles,
        passes,
        triangle: [tri(roles.l, roles.m), tri(roles.m, roles.h), tri(roles.l, roles.h)],
    }
}

/// Every R3 event of the log, classified, with the Gauss diagram just
/// before the move.
pub fn triple_sites(log: &EventLog) -> Result<Vec<(TripleEvent, GaussDiagram)>, LoopError> {
    let mut out = Vec::new();
    log.replay_with(|k, cur, ev| {
        if let Event::R3 { position, .. } = *ev {
            let g = GaussDiagram::from_parts(cur.n(), cur.letters(), &cur.ids);
            let t = classify_in(&g, cur.letters(), position, k);
            out.push((t, g));
        }
    })?;
    Ok(out)
}

/// Every R3 event of the log, classified.
pub fn classify_all(log: &EventLog) -> Result<Vec<TripleEvent>, LoopError> {
    Ok(triple_sites(log)?.into_iter().map(|(t, _)| t).collect())
}

/// Classifies the R3 event at `event_index`.
pub fn classify_triple(log: &EventLog, event_index: usize) -> Result<TripleEvent, LoopError> {
    let (d, _) = log.snapshot_at(event_index)?;
    let Event::R3 { position, .. } = log.events[event_index] else {
        return Err(LoopError::NotR3(event_index));
    };
    Ok(classify_at(&d, position, event_index))
}

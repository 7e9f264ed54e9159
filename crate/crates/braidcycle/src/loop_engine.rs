//! The canonical rotation loop as a log of elementary diagram moves.
//!
//! One half rotation inserts `ΔΔ⁻¹` in front of the word, cycles `Δ` to the
//! back and pushes it leftwards through every letter, then cancels `Δ⁻¹Δ`.
//! Two half rotations bring the word back to itself.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::{delta_letters, BraidError, BraidWord};

/// Persistent name of a crossing along the loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CrossingId(pub u32);

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoopError {
    #[error("closure of the braid is not a knot")]
    NotKnot,
    #[error("number of rotations must be at least 1")]
    ZeroRotations,
    #[error("event {index} ({event}) does not apply: {reason}")]
    Replay { index: usize, event: String, reason: String },
    #[error("event {0} is not a Reidemeister III move")]
    NotR3(usize),
    #[error("event index {0} out of range")]
    OutOfRange(usize),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// A braid diagram with one crossing id per letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedDiagram {
    pub word: BraidWord,
    pub ids: Vec<CrossingId>,
    /// Accumulated cyclic shift.
    pub phase: usize,
}

/// One elementary move. Positions index the current word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Event {
    R2Plus { position: usize, new_ids: [CrossingId; 2], letters: [i32; 2] },
    R2Minus { position: usize, dead_ids: [CrossingId; 2], letters: [i32; 2] },
    R3 { position: usize, ids: [CrossingId; 3], before: [i32; 3], after: [i32; 3] },
    DistantExchange { position: usize },
    CyclicShift { k: usize },
}

impl Event {
    pub fn name(&self) -> &'static str {
        match self {
            Event::R2Plus { .. } => "R2+",
            Event::R2Minus { .. } => "R2-",
            Event::R3 { .. } => "R3",
            Event::DistantExchange { .. } => "DX",
            Event::CyclicShift { .. } => "CS",
        }
    }

    pub fn is_r3(&self) -> bool {
        matches!(self, Event::R3 { .. })
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::R2Plus { position, .. }
            | Event::R2Minus { position, .. }
            | Event::R3 { position, .. }
            | Event::DistantExchange { position } => write!(f, "{}@{}", self.name(), position),
            Event::CyclicShift { k } => write!(f, "CS({k})"),
        }
    }
}

fn sgn(g: i32) -> i32 {
    if g > 0 {
        1
    } else {
        -1
    }
}

/// The letters after the braid relation on `x y z`, or `None` if it does not apply.
pub fn r3_rewrite([x, y, z]: [i32; 3]) -> Option<[i32; 3]> {
    if x.abs() != z.abs() || (x.abs() - y.abs()).abs() != 1 {
        return None;
    }
    let (sx, sy, sz) = (sgn(x), sgn(y), sgn(z));
    if sx == sz && sx != sy {
        return None;
    }
    Some([y.abs() * sz, x.abs() * sy, y.abs() * sx])
}

impl MarkedDiagram {
    /// Labels the letters `0..c` in order.
    pub fn new(word: BraidWord) -> Self {
        let ids = (0..word.len() as u32).map(CrossingId).collect();
        Self { word, ids, phase: 0 }
    }

    pub fn n(&self) -> usize {
        self.word.n()
    }

    pub fn letters(&self) -> &[i32] {
        self.word.letters()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn position_of(&self, id: CrossingId) -> Option<usize> {
        self.ids.iter().position(|&i| i == id)
    }

    /// Applies `ev` in place; on failure the diagram is left unchanged.
    pub fn apply(&mut self, ev: &Event) -> Result<(), String> {
        let len = self.len();
        let n = self.n() as i32;
        let letters = self.word.letters_mut();
        match *ev {
            Event::R2Plus { position, new_ids, letters: pair } => {
                if position > len {
                    return Err("position past the end".into());
                }
                if pair[0] != -pair[1] || pair[0] == 0 || pair[0].abs() >= n {
                    return Err("letters are not a cancelling pair of generators".into());
                }
                letters.splice(position..position, pair);
                self.ids.splice(position..position, new_ids);
            }
            Event::R2Minus { position, dead_ids, letters: pair } => {
                if position + 1 >= len {
                    return Err("position past the end".into());
                }
                let here = [letters[position], letters[position + 1]];
                if here[0] != -here[1] || here != pair {
                    return Err(format!("letters {here:?} are not the cancelling pair {pair:?}"));
                }
                if self.ids[position..position + 2] != dead_ids {
                    return Err("crossing ids do not match".into());
                }
                letters.drain(position..position + 2);
                self.ids.drain(position..position + 2);
            }
            Event::R3 { position, ids, before, after } => {
                if position + 2 >= len {
                    return Err("position past the end".into());
                }
                let here = [letters[position], letters[position + 1], letters[position + 2]];
                if here != before || r3_rewrite(here) != Some(after) {
                    return Err(format!("letters {here:?} admit no braid relation to {after:?}"));
                }
                if self.ids[position..position + 3] != ids {
                    return Err("crossing ids do not match".into());
                }
                letters[position..position + 3].copy_from_slice(&after);
                self.ids[position..position + 3].reverse();
            }
            Event::DistantExchange { position } => {
                if position + 1 >= len {
                    return Err("position past the end".into());
                }
                if (letters[position].abs() - letters[position + 1].abs()).abs() < 2 {
                    return Err("letters are not distant".into());
                }
                letters.swap(position, position + 1);
                self.ids.swap(position, position + 1);
            }
            Event::CyclicShift { k } => {
                if k > len {
                    return Err("shift longer than the word".into());
                }
                letters.rotate_left(k);
                self.ids.rotate_left(k);
                self.phase += k;
            }
        }
        Ok(())
    }
}

/// The loop `l·rot` of a closed braid as an explicit event sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventLog {
    pub initial: MarkedDiagram,
    pub events: Vec<Event>,
    pub l: usize,
}

struct Builder {
    diag: MarkedDiagram,
    events: Vec<Event>,
    next_id: u32,
}

impl Builder {
    fn push(&mut self, ev: Event) {
        if let Err(reason) = self.diag.apply(&ev) {
            panic!("canonical loop produced an invalid move {ev}: {reason}");
        }
        self.events.push(ev);
    }

    fn letter(&self, pos: usize) -> i32 {
        self.diag.letters()[pos]
    }

    fn r2plus(&mut self, position: usize, g: i32) {
        let new_ids = [CrossingId(self.next_id), CrossingId(self.next_id + 1)];
        self.next_id += 2;
        self.push(Event::R2Plus { position, new_ids, letters: [g, -g] });
    }

    fn r2minus(&mut self, position: usize) {
        let dead_ids = [self.diag.ids[position], self.diag.ids[position + 1]];
        let letters = [self.letter(position), self.letter(position + 1)];
        self.push(Event::R2Minus { position, dead_ids, letters });
    }

    fn r3(&mut self, position: usize) {
        let before = [self.letter(position), self.letter(position + 1), self.letter(position + 2)];
        let after = r3_rewrite(before).expect("braid relation applies");
        let mut ids = [CrossingId(0); 3];
        ids.copy_from_slice(&self.diag.ids[position..position + 3]);
        self.push(Event::R3 { position, ids, before, after });
    }

    fn swap(&mut self, position: usize) {
        self.push(Event::DistantExchange { position });
    }

    fn shift(&mut self, k: usize) {
        self.push(Event::CyclicShift { k });
    }

    /// Brings `word[start..]` to `target` by distant exchanges.
    fn reorder(&mut self, start: usize, target: &[i32]) {
        for (k, &t) in target.iter().enumerate() {
            let mut j = start + k;
            while self.letter(j) != t {
                j += 1;
            }
            while j > start + k {
                self.swap(j - 1);
                j -= 1;
            }
        }
    }

    /// Moves the letter at `pos` rightwards through the standard `Δ_m` on
    /// generators `off+1..off+m-1` that follows it.
    fn pass_letter(&mut self, pos: usize, m: usize, off: i32) {
        let g = self.letter(pos);
        let i = (g.abs() - off) as usize;
        let big = m * (m - 1) / 2;
        if m == 2 {
            if g < 0 {
                self.r2minus(pos);
                self.r2plus(pos + big - 1, g.abs());
            }
            return;
        }
        if i >= 2 {
            let mut p = pos;
            for _ in 0..i - 2 {
                self.swap(p);
                p += 1;
            }
            self.r3(p);
            p += 2;
            for _ in 0..m - 1 - i {
                self.swap(p);
                p += 1;
            }
            self.pass_letter(p, m - 1, off);
        } else {
            let mut target: Vec<i32> = delta_letters(m - 1).into_iter().map(|x| x + off).collect();
            let inner = target.len();
            target.extend((1..m as i32).rev().map(|x| x + off));
            self.reorder(pos + 1, &target);
            self.pass_letter(pos, m - 1, off);
            let mut p = pos + inner;
            self.r3(p);
            p += 2;
            for _ in 0..m - 3 {
                self.swap(p);
                p += 1;
            }
            let standard: Vec<i32> = delta_letters(m).into_iter().map(|x| x + off).collect();
            self.reorder(pos, &standard);
        }
    }

    fn half_rotation(&mut self) {
        let n = self.diag.n();
        let delta = delta_letters(n);
        let big = delta.len();
        let c = self.diag.len();
        for (k, &g) in delta.iter().enumerate() {
            self.r2plus(k, g);
        }
        self.shift(big);
        for j in (0..c).rev() {
            self.pass_letter(big + j, n, 0);
        }
        for k in 0..big {
            self.r2minus(big - 1 - k);
        }
    }
}

impl EventLog {
    /// Generates `l·rot` for a knotted closure.
    pub fn generate(word: &BraidWord, l: usize) -> Result<Self, LoopError> {
        if !word.is_knot() {
            return Err(LoopError::NotKnot);
        }
        if l == 0 {
            return Err(LoopError::ZeroRotations);
        }
        let initial = MarkedDiagram::new(word.clone());
        let mut b = Builder { diag: initial.clone(), events: Vec::new(), next_id: word.len() as u32 };
        for _ in 0..2 * l {
            b.half_rotation();
        }
        debug_assert_eq!(b.diag.letters(), word.letters());
        Ok(Self { initial, events: b.events, l })
    }

    pub fn n(&self) -> usize {
        self.initial.n()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn r3_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_r3()).count()
    }

    /// Replays the log, calling `visit(index, state_before, event)` for every
    /// event, and returns the final diagram.
    pub fn replay_with<F>(&self, mut visit: F) -> Result<MarkedDiagram, LoopError>
    where
        F: FnMut(usize, &MarkedDiagram, &Event),
    {
        let mut cur = self.initial.clone();
        for (index, ev) in self.events.iter().enumerate() {
            visit(index, &cur, ev);
            cur.apply(ev).map_err(|reason| LoopError::Replay { index, event: ev.to_string(), reason })?;
        }
        Ok(cur)
    }

    /// Every intermediate diagram, starting with the initial one.
    pub fn replay(&self) -> Result<Vec<MarkedDiagram>, LoopError> {
        let mut states = vec![self.initial.clone()];
        let mut cur = self.initial.clone();
        for (index, ev) in self.events.iter().enumerate() {
            cur.apply(ev).map_err(|reason| LoopError::Replay { index, event: ev.to_string(), reason })?;
            states.push(cur.clone());
        }
        Ok(states)
    }

    /// Checks that the log replays and closes up on the initial word.
    pub fn verify(&self) -> Result<MarkedDiagram, LoopError> {
        let last = self.replay_with(|_, _, _| {})?;
        if last.word != self.initial.word {
            return Err(LoopError::Replay {
                index: self.events.len(),
                event: "closure".into(),
                reason: "final word differs from the initial word".into(),
            });
        }
        Ok(last)
    }

    /// The diagram just before the R3 event at `index`, with its three ids.
    pub fn snapshot_at(&self, index: usize) -> Result<(MarkedDiagram, [CrossingId; 3]), LoopError> {
        match self.events.get(index) {
            None => Err(LoopError::OutOfRange(index)),
            Some(Event::R3 { ids, .. }) => {
                let mut cur = self.initial.clone();
                for (k, ev) in self.events[..index].iter().enumerate() {
                    cur.apply(ev).map_err(|reason| LoopError::Replay { index: k, event: ev.to_string(), reason })?;
                }
                Ok((cur, *ids))
            }
            Some(_) => Err(LoopError::NotR3(index)),
        }
    }
}

//! Trace graph of the loop, its circles, and character invariants.
//!
//! Every crossing id lives from its birth (an R2 move or the start of the
//! loop) to its death (an R2 move or the end). Lifetimes glued at the R2
//! moves and at the closing identification of the loop form the trace
//! circles; triple crossings are the points where three lifetimes meet.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::algebra::LaurentPoly;
use crate::braid::Permutation;
use crate::cocycle::{applies, matches, Family, FamilyError, Normalization};
use crate::gauss::{classify_in, GaussDiagram, TripleEvent, TripleType};
use crate::loop_engine::{CrossingId, Event, EventLog, LoopError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TraceError {
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error("crossing {id} changes marking from {was} to {now} at event {event}")]
    Marking { id: CrossingId, was: usize, now: usize, event: usize },
    #[error("trace circle mixes markings {0:?}")]
    CircleMarking(Vec<usize>),
    #[error("loop does not close on its initial word")]
    Open,
    #[error("monodromy is not well defined on circles")]
    Monodromy,
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Endpoint {
    Node(usize),
    /// The identification of the end of the loop with its start, at a word position.
    Seam(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    Triple(TripleEvent),
    Birth([CrossingId; 2]),
    Death([CrossingId; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceNode {
    pub event_index: usize,
    pub kind: NodeKind,
}

/// A piece of one crossing's lifetime between two nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceArc {
    pub id: CrossingId,
    pub from: Endpoint,
    pub to: Endpoint,
    /// Signed generator of the crossing along the arc.
    pub sticker: i32,
    /// Signed passes through the seam of the word.
    pub phi: i64,
    /// Passes through the end-of-loop identification.
    pub t: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Link {
    Seam(usize),
    Pair(CrossingId, usize),
}

#[derive(Clone, Debug)]
struct Life {
    writhe: i32,
    marking: usize,
    birth: Link,
    death: Link,
    /// `(event, triple index)` in time order.
    visits: Vec<(usize, usize)>,
    /// Events at which the crossing is carried across the seam of the word.
    wraps: Vec<usize>,
    born: Option<usize>,
}

/// Name of a trace circle: marking, torus class and an ordinal among
/// circles agreeing in both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CircleName {
    pub marking: usize,
    pub torus_class: (i64, i64),
    pub ordinal: usize,
}

impl fmt::Display for CircleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, t) = self.torus_class;
        write!(f, "({},({p},{t}),{})", self.marking, self.ordinal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCircle {
    pub name: CircleName,
    pub members: Vec<CrossingId>,
}

impl TraceCircle {
    pub fn marking(&self) -> usize {
        self.name.marking
    }

    pub fn torus_class(&self) -> (i64, i64) {
        self.name.torus_class
    }
}

struct UnionFind {
    parent: BTreeMap<CrossingId, CrossingId>,
}

impl UnionFind {
    fn find(&mut self, x: CrossingId) -> CrossingId {
        let p = *self.parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.parent.insert(x, r);
        r
    }

    fn union(&mut self, a: CrossingId, b: CrossingId) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent.insert(ra, rb);
        }
    }
}

/// The trace graph of a loop, resolved into named circles.
#[derive(Clone, Debug)]
pub struct TraceGraph {
    pub n: usize,
    pub l: usize,
    pub nodes: Vec<TraceNode>,
    pub arcs: Vec<TraceArc>,
    /// Classified triple crossings, in event order.
    pub triples: Vec<TripleEvent>,
    /// Node index of each triple.
    pub triple_nodes: Vec<usize>,
    /// Sorted by name.
    pub circles: Vec<TraceCircle>,
    circle_of: BTreeMap<CrossingId, usize>,
    lives: BTreeMap<CrossingId, Life>,
    initial_ids: Vec<CrossingId>,
    final_ids: Vec<CrossingId>,
    slices: Vec<Vec<CrossingId>>,
    events_per_rot: usize,
    event_count: usize,
}

struct OpenArc {
    from: Endpoint,
    sticker: i32,
    phi: i64,
}

impl TraceGraph {
    pub fn build(log: &EventLog) -> Result<Self, TraceError> {
        let n = log.n();
        let mut cur = log.initial.clone();
        let events_per_rot = log.events.len() / log.l.max(1);
        let mut nodes = Vec::new();
        let mut arcs = Vec::new();
        let mut triples = Vec::new();
        let mut triple_nodes = Vec::new();
        let mut lives: BTreeMap<CrossingId, Life> = BTreeMap::new();
        let mut open: BTreeMap<CrossingId, OpenArc> = BTreeMap::new();
        let mut uf = UnionFind { parent: BTreeMap::new() };
        let mut slices = vec![cur.ids.clone()];

        let g0 = GaussDiagram::from_parts(n, cur.letters(), &cur.ids);
        for (q, a) in g0.arrows.iter().enumerate() {
            lives.insert(
                a.id,
                Life {
                    writhe: a.writhe,
                    marking: a.marking,
                    birth: Link::Seam(q),
                    death: Link::Seam(q),
                    visits: Vec::new(),
                    wraps: Vec::new(),
                    born: None,
                },
            );
            open.insert(a.id, OpenArc { from: Endpoint::Seam(q), sticker: cur.letters()[q], phi: 0 });
            uf.find(a.id);
        }

        let close = |arcs: &mut Vec<TraceArc>, open: &mut BTreeMap<CrossingId, OpenArc>, id, to, t| {
            let o = open.remove(&id).expect("open arc");
            arcs.push(TraceArc { id, from: o.from, to, sticker: o.sticker, phi: o.phi, t });
        };

        for (k, ev) in log.events.iter().enumerate() {
            match *ev {
                Event::R3 { position, ids, .. } => {
                    let g = GaussDiagram::from_parts(n, cur.letters(), &cur.ids);
                    let t = classify_in(&g, cur.letters(), position, k);
                    let node = nodes.len();
                    nodes.push(TraceNode { event_index: k, kind: NodeKind::Triple(t.clone()) });
                    triple_nodes.push(node);
                    for id in ids {
                        close(&mut arcs, &mut open, id, Endpoint::Node(node), 0);
                        lives.get_mut(&id).expect("live id").visits.push((k, triples.len()));
                    }
                    triples.push(t);
                }
                Event::R2Minus { dead_ids, .. } => {
                    let node = nodes.len();
                    nodes.push(TraceNode { event_index: k, kind: NodeKind::Death(dead_ids) });
                    for (i, id) in dead_ids.into_iter().enumerate() {
                        close(&mut arcs, &mut open, id, Endpoint::Node(node), 0);
                        lives.get_mut(&id).expect("live id").death = Link::Pair(dead_ids[1 - i], k);
                    }
                    uf.union(dead_ids[0], dead_ids[1]);
                }
                Event::CyclicShift { k: shift } => {
                    for id in &cur.ids[..shift] {
                        lives.get_mut(id).expect("live id").wraps.push(k);
                        open.get_mut(id).expect("open arc").phi -= 1;
                    }
                }
                Event::R2Plus { .. } | Event::DistantExchange { .. } => {}
            }
            cur.apply(ev).map_err(|reason| LoopError::Replay { index: k, event: ev.to_string(), reason })?;
            match *ev {
                Event::R3 { position, ids, .. } => {
                    for (off, id) in ids.iter().rev().enumerate() {
                        let node = Endpoint::Node(nodes.len() - 1);
                        open.insert(*id, OpenArc { from: node, sticker: cur.letters()[position + off], phi: 0 });
                    }
                }
                Event::R2Plus { position, new_ids, letters } => {
                    let node = nodes.len();
                    nodes.push(TraceNode { event_index: k, kind: NodeKind::Birth(new_ids) });
                    for (i, id) in new_ids.into_iter().enumerate() {
                        open.insert(id, OpenArc { from: Endpoint::Node(node), sticker: letters[i], phi: 0 });
                        lives.insert(
                            id,
                            Life {
                                writhe: letters[i].signum(),
                                marking: 0,
                                birth: Link::Pair(new_ids[1 - i], k),
                                death: Link::Seam(position + i),
                                visits: Vec::new(),
                                wraps: Vec::new(),
                                born: Some(k),
                            },
                        );
                    }
                    uf.union(new_ids[0], new_ids[1]);
                }
                _ => {}
            }
            if !matches!(ev, Event::DistantExchange { .. }) {
                let g = GaussDiagram::from_parts(n, cur.letters(), &cur.ids);
                for a in &g.arrows {
                    let life = lives.get_mut(&a.id).expect("live id");
                    if life.marking == 0 {
                        life.marking = a.marking;
                    } else if life.marking != a.marking {
                        return Err(TraceError::Marking { id: a.id, was: life.marking, now: a.marking, event: k });
                    }
                }
            }
            if events_per_rot > 0 && (k + 1) % events_per_rot == 0 {
                slices.push(cur.ids.clone());
            }
        }
        if cur.word != log.initial.word {
            return Err(TraceError::Open);
        }
        for (q, (&f, &i)) in cur.ids.iter().zip(&log.initial.ids).enumerate() {
            close(&mut arcs, &mut open, f, Endpoint::Seam(q), 1);
            lives.get_mut(&f).expect("live id").death = Link::Seam(q);
            uf.union(f, i);
        }

        let mut comps: BTreeMap<CrossingId, Vec<CrossingId>> = BTreeMap::new();
        for &id in lives.keys() {
            comps.entry(uf.find(id)).or_default().push(id);
        }
        let survivors: BTreeSet<CrossingId> = cur.ids.iter().copied().collect();
        let mut raw = Vec::new();
        for members in comps.into_values() {
            let marks: BTreeSet<usize> = members.iter().map(|id| lives[id].marking).collect();
            if marks.len() != 1 {
                return Err(TraceError::CircleMarking(marks.into_iter().collect()));
            }
            let phi: i64 = members.iter().map(|id| -(lives[id].wraps.len() as i64) * lives[id].writhe as i64).sum();
            let t: i64 = members.iter().filter(|id| survivors.contains(id)).map(|id| lives[id].writhe as i64).sum();
            let first = *members.iter().min().expect("nonempty");
            raw.push((marks.into_iter().next().expect("one marking"), (phi, t), first, members));
        }
        raw.sort();
        let mut circles: Vec<TraceCircle> = Vec::with_capacity(raw.len());
        for (marking, torus_class, _, members) in raw {
            let ordinal = circles
                .last()
                .filter(|c| c.name.marking == marking && c.name.torus_class == torus_class)
                .map_or(0, |c| c.name.ordinal + 1);
            circles.push(TraceCircle { name: CircleName { marking, torus_class, ordinal }, members });
        }
        let mut circle_of = BTreeMap::new();
        for (i, c) in circles.iter().enumerate() {
            for &id in &c.members {
                circle_of.insert(id, i);
            }
        }
        Ok(Self {
            n,
            l: log.l,
            nodes,
            arcs,
            triples,
            triple_nodes,
            circles,
            circle_of,
            lives,
            initial_ids: log.initial.ids.clone(),
            final_ids: cur.ids,
            slices,
            events_per_rot,
            event_count: log.events.len(),
        })
    }

    /// Index into [`circles`](Self::circles) of the circle through `id`.
    pub fn circle_of(&self, id: CrossingId) -> Option<usize> {
        self.circle_of.get(&id).copied()
    }

    pub fn marking_of(&self, id: CrossingId) -> Option<usize> {
        self.lives.get(&id).map(|l| l.marking)
    }

    pub fn triple_count(&self) -> usize {
        self.triples.len()
    }

    pub fn tangency_count(&self) -> usize {
        self.nodes.len() - self.triples.len()
    }

    fn names(&self, ids: &[CrossingId]) -> Vec<usize> {
        ids.iter().map(|&id| self.circle_of[&id]).collect()
    }

    /// Permutation of crossings and circles induced by one rotation.
    pub fn monodromy(&self) -> Result<Monodromy, TraceError> {
        let e = self.events_per_rot;
        let mut born: BTreeMap<(usize, usize, usize), CrossingId> = BTreeMap::new();
        for (&id, life) in &self.lives {
            if let (Some(k), Link::Pair(other, _)) = (life.born, life.birth) {
                born.insert((k / e, k % e, usize::from(id > other)), id);
            }
        }
        let mut id_map = BTreeMap::new();
        for (&(copy, j, slot), &id) in &born {
            id_map.insert(id, born[&((copy + 1) % self.l, j, slot)]);
        }
        for k in 0..self.l {
            for (&a, &b) in self.slices[k].iter().zip(&self.slices[k + 1]) {
                id_map.entry(a).or_insert(b);
            }
        }
        let mut images: Vec<Option<usize>> = vec![None; self.circles.len()];
        for (a, b) in &id_map {
            let (ca, cb) = (self.circle_of[a], self.circle_of[b]);
            match images[ca] {
                Some(x) if x != cb => return Err(TraceError::Monodromy),
                _ => images[ca] = Some(cb),
            }
        }
        let images = images.into_iter().collect::<Option<Vec<_>>>().ok_or(TraceError::Monodromy)?;
        let circle_perm = Permutation::from_images(images).ok_or(TraceError::Monodromy)?;
        Ok(Monodromy { id_map, circle_perm })
    }

    /// Degree-0 characters of every marked type.
    pub fn characters0(&self) -> CharacterTable<i64> {
        let mut table = CharacterTable::new(0, self.l, "deg0");
        for t in &self.triples {
            let key = CharacterKey { ty: t.global_type, a: t.a, b: t.b, names: self.names(&t.slot_ids()) };
            table.add(key, t.sign as i64);
        }
        table
    }

    /// Degree-0 characters of one marked type.
    pub fn characters0_of(&self, a: usize, b: usize, ty: TripleType) -> CharacterTable<i64> {
        let mut table = self.characters0();
        table.entries.retain(|k, _| (k.ty, k.a, k.b) == (ty, a, b));
        table
    }

    /// Characters of a configuration family. A triple contributes
    /// `sign·x^E` to the entry of each name tuple, where `E` sums the
    /// configurations whose arrows carry those names.
    pub fn characters_d(
        &self,
        log: &EventLog,
        family: &Family,
        norm: Normalization,
    ) -> Result<CharacterTable<LaurentPoly>, TraceError> {
        family.validate(self.n)?;
        let mut table = CharacterTable::new(family.degree(), self.l, &family.to_string());
        let sites = crate::gauss::triple_sites(log)?;
        for (t, g) in sites.iter().filter(|(t, _)| applies(family, t, self.n)) {
            let tri = self.names(&t.slot_ids());
            let mut by_names: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
            for m in matches(family, t, g) {
                let mut names = tri.clone();
                names.extend(self.names(&m.slots));
                *by_names.entry(names).or_default() += m.weight;
            }
            if by_names.is_empty() && norm == Normalization::Literal {
                by_names.insert(tri.clone(), 0);
            }
            for (names, e) in by_names {
                if e != 0 || norm == Normalization::Literal {
                    let key = CharacterKey { ty: t.global_type, a: t.a, b: t.b, names };
                    table.add(key, LaurentPoly::monomial(t.sign, e));
                }
            }
        }
        Ok(table)
    }

    /// Walks along the circle through `id` from time `time`, forwards or
    /// backwards in time, until it meets triple `target` or `avoid`.
    /// Returns the branch met at `target` and the torus displacement.
    fn walk(
        &self,
        mut id: CrossingId,
        mut time: i64,
        mut forward: bool,
        target: usize,
        avoid: usize,
    ) -> Option<(CrossingId, (i64, i64))> {
        let (mut dphi, mut dt) = (0i64, 0i64);
        let end = self.event_count as i64;
        for _ in 0..4 * (self.arcs.len() + 1) {
            let life = &self.lives[&id];
            if forward {
                let next = life.visits.iter().find(|&&(e, _)| e as i64 > time).copied();
                let limit = next.map_or(end, |(e, _)| e as i64);
                dphi -= life.wraps.iter().filter(|&&w| (w as i64) > time && (w as i64) < limit).count() as i64;
                match next {
                    Some((e, tri)) => {
                        if tri == target {
                            return Some((id, (dphi, dt)));
                        }
                        if tri == avoid {
                            return None;
                        }
                        time = e as i64;
                    }
                    None => match life.death {
                        Link::Pair(other, e) => {
                            id = other;
                            time = e as i64;
                            forward = false;
                        }
                        Link::Seam(q) => {
                            dt += 1;
                            id = self.initial_ids[q];
                            time = -1;
                        }
                    },
                }
            } else {
                let prev = life.visits.iter().rev().find(|&&(e, _)| (e as i64) < time).copied();
                let limit = prev.map_or(-1, |(e, _)| e as i64);
                dphi += life.wraps.iter().filter(|&&w| (w as i64) < time && (w as i64) > limit).count() as i64;
                match prev {
                    Some((e, tri)) => {
                        if tri == target {
                            return Some((id, (dphi, dt)));
                        }
                        if tri == avoid {
                            return None;
                        }
                        time = e as i64;
                    }
                    None => match life.birth {
                        Link::Pair(other, e) => {
                            id = other;
                            time = e as i64;
                            forward = true;
                        }
                        Link::Seam(q) => {
                            dt -= 1;
                            id = self.final_ids[q];
                            time = end;
                        }
                    },
                }
            }
        }
        None
    }

    /// Whether triples `p` and `q` bound a generalized trihedron: three
    /// paths along the circles join distinct branches of `p` to distinct
    /// branches of `q` with one common torus displacement.
    pub fn is_trihedron(&self, p: usize, q: usize) -> bool {
        let tp = &self.triples[p];
        let tq = &self.triples[q];
        if tp.sign == tq.sign || tp.marked_type() != tq.marked_type() {
            return false;
        }
        let start = tp.event_index as i64;
        let branches: Vec<CrossingId> = tp.triangle.iter().map(|a| a.id).collect();
        let options: Vec<Vec<(CrossingId, (i64, i64))>> = branches
            .iter()
            .map(|&b| [true, false].iter().filter_map(|&fwd| self.walk(b, start, fwd, q, p)).collect())
            .collect();
        for x in &options[0] {
            for y in &options[1] {
                for z in &options[2] {
                    let distinct = x.0 != y.0 && y.0 != z.0 && x.0 != z.0;
                    if distinct && x.1 == y.1 && y.1 == z.1 {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Pairs off generalized trihedrons by a maximum matching between the
    /// positive and the negative triples; the unpaired triples form `E`.
    pub fn detect_generalized_trihedrons(&self) -> ESet {
        let count = self.triples.len();
        let (pos, neg): (Vec<usize>, Vec<usize>) = (0..count).partition(|&i| self.triples[i].sign > 0);
        let adj: Vec<Vec<usize>> =
            pos.iter().map(|&p| (0..neg.len()).filter(|&j| self.is_trihedron(p, neg[j])).collect()).collect();
        let mut mate: Vec<Option<usize>> = vec![None; neg.len()];
        fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], mate: &mut [Option<usize>]) -> bool {
            for &j in &adj[i] {
                if seen[j] {
                    continue;
                }
                seen[j] = true;
                if mate[j].is_none_or(|k| augment(k, adj, seen, mate)) {
                    mate[j] = Some(i);
                    return true;
                }
            }
            false
        }
        for i in 0..pos.len() {
            let mut seen = vec![false; neg.len()];
            augment(i, &adj, &mut seen, &mut mate);
        }
        let mut paired = vec![false; count];
        let mut pairing: Vec<(usize, usize)> =
            mate.iter().enumerate().filter_map(|(j, m)| m.map(|i| (pos[i].min(neg[j]), pos[i].max(neg[j])))).collect();
        pairing.sort_unstable();
        for &(p, q) in &pairing {
            paired[p] = true;
            paired[q] = true;
        }
        ESet { members: (0..count).filter(|&i| !paired[i]).collect(), pairing }
    }

    /// Unsigned counts of the positive and the negative triples of `e` of
    /// marked type `(a,b)^ty`, per name triple.
    pub fn pos_neg_characters(
        &self,
        e: &ESet,
        a: usize,
        b: usize,
        ty: TripleType,
    ) -> (CharacterTable<i64>, CharacterTable<i64>) {
        let mut pos = CharacterTable::new(0, self.l, "deg0+");
        let mut neg = CharacterTable::new(0, self.l, "deg0-");
        for &i in &e.members {
            let t = &self.triples[i];
            if t.marked_type() != (ty, a, b) {
                continue;
            }
            let key = CharacterKey { ty, a, b, names: self.names(&t.slot_ids()) };
            if t.sign > 0 {
                pos.add(key, 1);
            } else {
                neg.add(key, 1);
            }
        }
        (pos, neg)
    }

    /// Summary for JSON export.
    pub fn summary(&self) -> TraceSummary {
        let mut census: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for t in &self.triples {
            let slot = census.entry(format!("({},{}){}", t.a, t.b, t.global_type)).or_default();
            if t.sign > 0 {
                slot.0 += 1;
            } else {
                slot.1 += 1;
            }
        }
        TraceSummary {
            triple_nodes: self.triples.len(),
            tangency_nodes: self.tangency_count(),
            circles: self.circles.iter().map(|c| c.name).collect(),
            markings: self.circles.iter().map(|c| c.name.marking).collect::<BTreeSet<_>>().into_iter().collect(),
            triple_census: census
                .into_iter()
                .map(|(ty, (positive, negative))| TypeCensus { ty, positive, negative })
                .collect(),
            torus_cover: format!("{}-fold", self.l),
        }
    }

    /// The graph in Graphviz DOT form.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph trace {\n  node [shape=point];\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let label = match &node.kind {
                NodeKind::Triple(t) => {
                    format!("({},{}){} {}", t.a, t.b, t.global_type, if t.sign > 0 { "+1" } else { "-1" })
                }
                NodeKind::Birth(_) => "R2+".to_string(),
                NodeKind::Death(_) => "R2-".to_string(),
            };
            let shape = if matches!(node.kind, NodeKind::Triple(_)) { "circle" } else { "diamond" };
            let _ = writeln!(s, "  n{i} [shape={shape}, label=\"{label}\", xlabel=\"e{}\"];", node.event_index);
        }
        let seams: BTreeSet<usize> = self
            .arcs
            .iter()
            .flat_map(|a| [a.from, a.to])
            .filter_map(|e| match e {
                Endpoint::Seam(q) => Some(q),
                Endpoint::Node(_) => None,
            })
            .collect();
        for q in seams {
            let _ = writeln!(s, "  s{q} [shape=box, label=\"seam {q}\"];");
        }
        let end = |e: &Endpoint| match e {
            Endpoint::Node(i) => format!("n{i}"),
            Endpoint::Seam(q) => format!("s{q}"),
        };
        for a in &self.arcs {
            let name = self.circles[self.circle_of[&a.id]].name;
            let _ = writeln!(s, "  {} -- {} [label=\"{} {}\"];", end(&a.from), end(&a.to), a.sticker, name);
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCensus {
    #[serde(rename = "type")]
    pub ty: String,
    pub positive: usize,
    pub negative: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub triple_nodes: usize,
    pub tangency_nodes: usize,
    pub circles: Vec<CircleName>,
    pub markings: Vec<usize>,
    pub triple_census: Vec<TypeCensus>,
    pub torus_cover: String,
}

/// Crossing and circle permutation of one rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monodromy {
    pub id_map: BTreeMap<CrossingId, CrossingId>,
    /// On the indices of [`TraceGraph::circles`].
    pub circle_perm: Permutation,
}

/// Triples left after removing generalized trihedrons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ESet {
    /// Indices into [`TraceGraph::triples`].
    pub members: Vec<usize>,
    pub pairing: Vec<(usize, usize)>,
}

impl ESet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Marked type of a triple plus the circle indices filling the slots of a
/// configuration: the `a`, `b` and third arrow of the triangle, then any
/// extra arrows.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CharacterKey {
    #[serde(rename = "type")]
    pub ty: TripleType,
    pub a: usize,
    pub b: usize,
    pub names: Vec<usize>,
}

/// Value contributed by a character entry.
pub trait CharValue: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&mut self, other: Self);
}

impl CharValue for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&mut self, other: Self) {
        *self += other;
    }
}

impl CharValue for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&mut self, other: Self) {
        *self += other;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable<V> {
    pub degree: usize,
    pub l: usize,
    pub family: String,
    pub entries: BTreeMap<CharacterKey, V>,
}

impl<V: CharValue> CharacterTable<V> {
    pub fn new(degree: usize, l: usize, family: &str) -> Self {
        Self { degree, l, family: family.to_string(), entries: BTreeMap::new() }
    }

    pub fn add(&mut self, key: CharacterKey, v: V) {
        let slot = self.entries.entry(key.clone()).or_insert_with(V::zero);
        slot.add(v);
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn values(&self) -> impl Iterator<Item = &V> {
        self.entries.values()
    }

    fn renamed(&self, map: &[Option<usize>]) -> Option<BTreeMap<CharacterKey, V>> {
        let mut out = BTreeMap::new();
        for (k, v) in &self.entries {
            let names = k.names.iter().map(|&i| map[i]).collect::<Option<Vec<_>>>()?;
            out.insert(CharacterKey { names, ..k.clone() }, v.clone());
        }
        Some(out)
    }
}

/// Searches for a bijection of circle names, preserving marking and torus
/// class, that carries every table of `a` onto the matching table of `b`.
/// Returns the bijection as images of `circles_a` indices.
pub fn find_name_bijection<V: CharValue>(
    a: &[CharacterTable<V>],
    b: &[CharacterTable<V>],
    circles_a: &[TraceCircle],
    circles_b: &[TraceCircle],
) -> Option<Vec<usize>> {
    if a.len() != b.len() || circles_a.len() != circles_b.len() {
        return None;
    }
    let class = |c: &TraceCircle| (c.name.marking, c.name.torus_class);
    let mut ca: Vec<_> = circles_a.iter().map(class).collect();
    let mut cb: Vec<_> = circles_b.iter().map(class).collect();
    ca.sort();
    cb.sort();
    if ca != cb {
        return None;
    }
    for (x, y) in a.iter().zip(b) {
        if x.entries.len() != y.entries.len() || (x.degree, x.l, &x.family) != (y.degree, y.l, &y.family) {
            return None;
        }
        let mut vx: Vec<String> = x.values().map(|v| format!("{v:?}")).collect();
        let mut vy: Vec<String> = y.values().map(|v| format!("{v:?}")).collect();
        vx.sort();
        vy.sort();
        if vx != vy {
            return None;
        }
    }

    struct Search<'s, V> {
        a: &'s [CharacterTable<V>],
        b: &'s [CharacterTable<V>],
        ca: &'s [TraceCircle],
        cb: &'s [TraceCircle],
        fwd: Vec<Option<usize>>,
        back: Vec<Option<usize>>,
    }

    impl<V: CharValue> Search<'_, V> {
        /// Entries whose names are all assigned agree in both directions.
        fn consistent(&self) -> bool {
            for (x, y) in self.a.iter().zip(self.b) {
                for (side, other, map) in [(x, y, &self.fwd), (y, x, &self.back)] {
                    for (k, v) in &side.entries {
                        let Some(names) = k.names.iter().map(|&i| map[i]).collect::<Option<Vec<_>>>() else {
                            continue;
                        };
                        let key = CharacterKey { names, ..k.clone() };
                        if other.entries.get(&key) != Some(v) {
                            return false;
                        }
                    }
                }
            }
            true
        }

        fn go(&mut self, i: usize) -> bool {
            if i == self.ca.len() {
                return self.a.iter().zip(self.b).all(|(x, y)| x.renamed(&self.fwd).as_ref() == Some(&y.entries));
            }
            let want = (self.ca[i].name.marking, self.ca[i].name.torus_class);
            for j in 0..self.cb.len() {
                if self.back[j].is_some() || (self.cb[j].name.marking, self.cb[j].name.torus_class) != want {
                    continue;
                }
                self.fwd[i] = Some(j);
                self.back[j] = Some(i);
                if self.consistent() && self.go(i + 1) {
                    return true;
                }
                self.fwd[i] = None;
                self.back[j] = None;
            }
            false
        }
    }

    let mut s = Search {
        a,
        b,
        ca: circles_a,
        cb: circles_b,
        fwd: vec![None; circles_a.len()],
        back: vec![None; circles_b.len()],
    };
    if s.go(0) {
        Some(s.fwd.into_iter().map(|x| x.expect("complete bijection")).collect())
    } else {
        None
    }
}

/// True iff some marking- and torus-class-preserving renaming of the
/// circles identifies the two sets of tables.
pub fn compare_invariants<V: CharValue>(
    a: &[CharacterTable<V>],
    b: &[CharacterTable<V>],
    circles_a: &[TraceCircle],
    circles_b: &[TraceCircle],
) -> bool {
    find_name_bijection(a, b, circles_a, circles_b).is_some()
}

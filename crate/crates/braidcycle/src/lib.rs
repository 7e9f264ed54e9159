//! One-cocycle invariants of closed braids.
//!
//! The canonical rotation loop of a closed braid is realized as an explicit
//! log of Reidemeister moves ([`loop_engine`]). Its triple crossings are
//! classified from Gauss diagrams ([`gauss`]) and weighted by configurations
//! to give Laurent-polynomial invariants ([`cocycle`]). The trace graph of the
//! loop splits into named circles which refine the invariants into character
//! tables ([`trace`]).

pub mod algebra;
pub mod braid;
pub mod cocycle;
pub mod gauss;
pub mod loop_engine;
pub mod trace;

pub use algebra::{LaurentPoly, ParsePolyError};
pub use braid::{default_cable_twist, BraidError, BraidWord, Permutation};

pub use cocycle::{Family, FamilyError, FamilyKind, InvariantResult, Normalization};
pub use gauss::{GaussArrow, GaussDiagram, Roles, TripleEvent, TripleType};
pub use loop_engine::{CrossingId, Event, EventLog, LoopError, MarkedDiagram};
pub use trace::{
    compare_invariants, CharacterKey, CharacterTable, CircleName, ESet, Monodromy, TraceCircle, TraceGraph,
};

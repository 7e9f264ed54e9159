//! Text and JSON rendering of braids, circles and character tables.

use braidcycle::{BraidWord, CharacterTable, TraceGraph};
use serde::Serialize;
use serde_json::{json, Value};

pub fn braid_json(w: &BraidWord) -> Value {
    json!({ "n": w.n(), "letters": w.letters() })
}

pub fn circles_json(g: &TraceGraph) -> Value {
    g.circles
        .iter()
        .map(|c| {
            json!({
                "name": c.name.to_string(),
                "marking": c.name.marking,
                "torus_class": [c.name.torus_class.0, c.name.torus_class.1],
                "ordinal": c.name.ordinal,
            })
        })
        .collect()
}

fn names(g: &TraceGraph, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| g.circles[i].name.to_string()).collect()
}

pub fn table_json<V: Serialize>(t: &CharacterTable<V>, g: &TraceGraph) -> Value {
    let entries: Vec<Value> = t
        .entries
        .iter()
        .map(|(k, v)| {
            json!({
                "type": format!("({},{}){}", k.a, k.b, k.ty),
                "names": names(g, &k.names),
                "value": v,
            })
        })
        .collect();
    json!({ "family": t.family, "degree": t.degree, "l": t.l, "entries": entries })
}

pub fn table_text<V: std::fmt::Display>(t: &CharacterTable<V>, g: &TraceGraph) -> String {
    let mut out = format!("{} (degree {}, l = {}): {} entries\n", t.family, t.degree, t.l, t.entries.len());
    for (k, v) in &t.entries {
        out.push_str(&format!("  ({},{}){} [{}] {}\n", k.a, k.b, k.ty, names(g, &k.names).join(" "), v));
    }
    out
}

//! Command-line front end: invariants, character tables, trace graphs,
//! the reverse-word distinguisher and cabling.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use braidcycle::cocycle::{evaluate, EvalError};
use braidcycle::trace::TraceError;
use braidcycle::{
    compare_invariants, default_cable_twist, BraidError, BraidWord, CharacterTable, EventLog, Family, FamilyError,
    FamilyKind, LaurentPoly, LoopError, Normalization, TraceGraph,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::{braid_json, circles_json, table_json, table_text};

#[derive(Parser)]
#[command(name = "braidcycle", version, about = "One-cocycle invariants of closed braids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one cocycle polynomial on the rotation loop.
    Invariant(LoopArgs),
    /// Print the character table of a family.
    Characters(LoopArgs),
    /// Build the trace graph and summarize it.
    Trace(LoopArgs),
    /// Compare character tables of a braid and a second braid.
    Distinguish(LoopArgs),
    /// Replace every strand by parallel copies.
    Cable(CableArgs),
}

#[derive(Args)]
struct Common {
    /// Braid word as signed generator indices, e.g. "1 -2 -3".
    #[arg(long, allow_hyphen_values = true)]
    braid: String,
    /// Number of strands.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct LoopArgs {
    #[command(flatten)]
    common: Common,
    /// Number of full rotations.
    #[arg(long, default_value_t = 1)]
    l: usize,
    /// Family selector such as "deg0:(1,2)-", "degd-l:2" or "deg1-nm2:mirror".
    #[arg(long)]
    family: Option<String>,
    /// Gauss degree of the character tables when no family is given.
    #[arg(long, default_value_t = 0)]
    degree: usize,
    /// Second braid for `distinguish`: "reverse" or a word on the same strands.
    #[arg(long, default_value = "reverse", allow_hyphen_values = true)]
    against: String,
    #[arg(long, value_enum, default_value_t = Norm::Reduced)]
    normalization: Norm,
    /// Write the trace graph in DOT form to this path.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct CableArgs {
    #[command(flatten)]
    common: Common,
    /// Number of parallel copies of each strand.
    #[arg(long)]
    k: usize,
    /// Append the twist inside the first bundle that makes the cable a knot.
    #[arg(long)]
    twist: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Norm {
    Reduced,
    Literal,
}

impl From<Norm> for Normalization {
    fn from(n: Norm) -> Self {
        match n {
            Norm::Reduced => Normalization::Reduced,
            Norm::Literal => Normalization::Literal,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("closure of the braid is not a knot")]
    NotKnot,
    #[error("invalid family: {0}")]
    Family(String),
    #[error("replay failed: {0}")]
    Replay(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Parse(_) => 2,
            CliError::NotKnot => 3,
            CliError::Family(_) => 4,
            CliError::Replay(_) => 5,
        }
    }
}

impl From<BraidError> for CliError {
    fn from(e: BraidError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        CliError::Family(e.to_string())
    }
}

impl From<LoopError> for CliError {
    fn from(e: LoopError) -> Self {
        match e {
            LoopError::NotKnot => CliError::NotKnot,
            LoopError::ZeroRotations => CliError::Parse(e.to_string()),
            LoopError::Braid(b) => b.into(),
            other => CliError::Replay(other.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Family(f) => f.into(),
            EvalError::Loop(l) => l.into(),
        }
    }
}

impl From<TraceError> for CliError {
    fn from(e: TraceError) -> Self {
        match e {
            TraceError::Loop(l) => l.into(),
            TraceError::Family(f) => f.into(),
            other => CliError::Replay(other.to_string()),
        }
    }
}

/// Events above which stage messages go to standard error.
const PROGRESS_EVENTS: usize = 100_000;

fn braid_of(c: &Common) -> Result<BraidWord, CliError> {
    Ok(BraidWord::parse(&c.braid, c.n)?)
}

fn family_of(s: &str, n: usize) -> Result<Family, CliError> {
    let f: Family = s.parse()?;
    f.validate(n)?;
    Ok(f)
}

fn generate(w: &BraidWord, l: usize) -> Result<EventLog, CliError> {
    if !w.is_knot() {
        return Err(CliError::NotKnot);
    }
    let log = EventLog::generate(w, l)?;
    if log.len() > PROGRESS_EVENTS {
        eprintln!("loop generated: {} events, {} triple moves", log.len(), log.r3_count());
    }
    Ok(log)
}

fn build(log: &EventLog) -> Result<TraceGraph, CliError> {
    let g = TraceGraph::build(log)?;
    if log.len() > PROGRESS_EVENTS {
        eprintln!("trace graph built: {} circles", g.circles.len());
    }
    Ok(g)
}

/// Families whose character tables are compared for a given degree.
fn families_of_degree(d: usize, n: usize) -> Vec<Family> {
    let mut out = Vec::new();
    if n.is_multiple_of(3) {
        let mut kinds = vec![FamilyKind::DegDL { d }];
        if d.is_multiple_of(2) {
            kinds.push(FamilyKind::DegDH { d });
        }
        for k in kinds {
            out.push(Family::new(k));
            out.push(Family::new(k).mirrored());
        }
    }
    if d == 1 && n >= 4 {
        out.push(Family::new(FamilyKind::Deg1Nm2));
    }
    out
}

enum Tables {
    Int(Vec<CharacterTable<i64>>),
    Poly(Vec<CharacterTable<LaurentPoly>>),
}

fn tables(args: &LoopArgs, log: &EventLog, g: &TraceGraph) -> Result<Tables, CliError> {
    let n = log.n();
    let norm = args.normalization.into();
    let families = match &args.family {
        Some(s) => vec![family_of(s, n)?],
        None if args.degree == 0 => return Ok(Tables::Int(vec![g.characters0()])),
        None => {
            let fams = families_of_degree(args.degree, n);
            if fams.is_empty() {
                return Err(CliError::Family(format!("no family of degree {} on {n} strands", args.degree)));
            }
            fams
        }
    };
    if let FamilyKind::Deg0 { a, b, ty } = families[0].kind {
        return Ok(Tables::Int(vec![g.characters0_of(a, b, ty)]));
    }
    let polys = families.iter().map(|f| g.characters_d(log, f, norm)).collect::<Result<Vec<_>, _>>()?;
    Ok(Tables::Poly(polys))
}

fn run_invariant(args: &LoopArgs) -> Result<String, CliError> {
    let w = braid_of(&args.common)?;
    let selector = args.family.as_deref().ok_or_else(|| CliError::Family("--family is required".into()))?;
    let family = family_of(selector, w.n())?;
    let log = generate(&w, args.l)?;
    let res = evaluate(&log, &family, args.normalization.into())?;
    Ok(match args.common.format {
        Format::Text => format!("{}\n", res.value),
        Format::Json => json_line(json!({
            "schema": 1,
            "command": "invariant",
            "braid": braid_json(&w),
            "l": args.l,
            "family": family.to_string(),
            "normalization": res.normalization,
            "value": res.value,
            "text": res.value.to_string(),
        })),
    })
}

fn run_characters(args: &LoopArgs) -> Result<String, CliError> {
    let w = braid_of(&args.common)?;
    let log = generate(&w, args.l)?;
    let g = build(&log)?;
    let t = tables(args, &log, &g)?;
    Ok(match args.common.format {
        Format::Text => match &t {
            Tables::Int(ts) => ts.iter().map(|x| table_text(x, &g)).collect(),
            Tables::Poly(ts) => ts.iter().map(|x| table_text(x, &g)).collect(),
        },
        Format::Json => {
            let list: Vec<_> = match &t {
                Tables::Int(ts) => ts.iter().map(|x| table_json(x, &g)).collect(),
                Tables::Poly(ts) => ts.iter().map(|x| table_json(x, &g)).collect(),
            };
            json_line(json!({
                "schema": 1,
                "command": "characters",
                "braid": braid_json(&w),
                "l": args.l,
                "circles": circles_json(&g),
                "tables": list,
            }))
        }
    })
}

fn run_trace(args: &LoopArgs) -> Result<String, CliError> {
    let w = braid_of(&args.common)?;
    let log = generate(&w, args.l)?;
    let g = build(&log)?;
    if let Some(path) = &args.dot {
        std::fs::write(path, g.to_dot()).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    let s = g.summary();
    Ok(match args.common.format {
        Format::Text => {
            let mut out = format!(
                "triple nodes: {}\ntangency nodes: {}\ncircles: {}\nmarkings: {:?}\ntorus cover: {}\n",
                s.triple_nodes,
                s.tangency_nodes,
                s.circles.len(),
                s.markings,
                s.torus_cover
            );
            for c in &s.circles {
                out.push_str(&format!("circle {c}\n"));
            }
            for t in &s.triple_census {
                out.push_str(&format!("type {}: {} positive, {} negative\n", t.ty, t.positive, t.negative));
            }
            out
        }
        Format::Json => json_line(json!({
            "schema": 1,
            "command": "trace",
            "braid": braid_json(&w),
            "l": args.l,
            "summary": s,
        })),
    })
}

fn run_distinguish(args: &LoopArgs) -> Result<String, CliError> {
    let w = braid_of(&args.common)?;
    let v = if args.against == "reverse" { w.reverse() } else { BraidWord::parse(&args.against, w.n())? };
    let (lw, lv) = (generate(&w, args.l)?, generate(&v, args.l)?);
    let (gw, gv) = (build(&lw)?, build(&lv)?);
    let (tw, tv) = (tables(args, &lw, &gw)?, tables(args, &lv, &gv)?);
    let (same, witness) = match (&tw, &tv) {
        (Tables::Int(a), Tables::Int(b)) => verdict(a, b, &gw, &gv),
        (Tables::Poly(a), Tables::Poly(b)) => verdict(a, b, &gw, &gv),
        _ => unreachable!("both sides use the same families"),
    };
    let word = if same { "CONJUGACY-COMPATIBLE" } else { "DISTINGUISHED" };
    Ok(match args.common.format {
        Format::Text => {
            let mut out = format!("{word}\n");
            if let Some(k) = witness {
                let (a, b) = match (&tw, &tv) {
                    (Tables::Int(a), Tables::Int(b)) => (table_text(&a[k], &gw), table_text(&b[k], &gv)),
                    (Tables::Poly(a), Tables::Poly(b)) => (table_text(&a[k], &gw), table_text(&b[k], &gv)),
                    _ => unreachable!(),
                };
                out.push_str(&format!("first braid:\n{a}second braid:\n{b}"));
            }
            out
        }
        Format::Json => {
            let pair = witness.map(|k| match (&tw, &tv) {
                (Tables::Int(a), Tables::Int(b)) => json!([table_json(&a[k], &gw), table_json(&b[k], &gv)]),
                (Tables::Poly(a), Tables::Poly(b)) => json!([table_json(&a[k], &gw), table_json(&b[k], &gv)]),
                _ => unreachable!(),
            });
            json_line(json!({
                "schema": 1,
                "command": "distinguish",
                "braid": braid_json(&w),
                "against": braid_json(&v),
                "l": args.l,
                "result": word,
                "witness": pair,
            }))
        }
    })
}

/// Joint comparison plus the index of a table that differs on its own.
fn verdict<V: braidcycle::trace::CharValue>(
    a: &[CharacterTable<V>],
    b: &[CharacterTable<V>],
    ga: &TraceGraph,
    gb: &TraceGraph,
) -> (bool, Option<usize>) {
    if compare_invariants(a, b, &ga.circles, &gb.circles) {
        return (true, None);
    }
    let k = (0..a.len()).find(|&k| !compare_invariants(&a[k..=k], &b[k..=k], &ga.circles, &gb.circles)).unwrap_or(0);
    (false, Some(k))
}

fn run_cable(args: &CableArgs) -> Result<String, CliError> {
    let w = braid_of(&args.common)?;
    let twist = default_cable_twist(args.k);
    let c = w.cable(args.k, args.twist.then_some(&twist[..]))?;
    Ok(match args.common.format {
        Format::Text => format!("n: {}\nbraid: {c}\nknot: {}\n", c.n(), c.is_knot()),
        Format::Json => json_line(json!({
            "schema": 1,
            "command": "cable",
            "braid": braid_json(&c),
            "knot": c.is_knot(),
        })),
    })
}

fn json_line(v: serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(&v).expect("values serialize"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Invariant(a) => run_invariant(a),
        Command::Characters(a) => run_characters(a),
        Command::Trace(a) => run_trace(a),
        Command::Distinguish(a) => run_distinguish(a),
        Command::Cable(a) => run_cable(a),
    };
    match out {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

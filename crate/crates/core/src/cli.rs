//! Command line front end: a line-oriented curve document, text reports and
//! DOT export.
//!
//! ```text
//! # two genus-2 curves meeting at Weierstrass points
//! [component]
//! id=C1 genus=2 gonality=2
//! id=C2 genus=2 gonality=2
//! [node]
//! id=n1 branches=C1.p,C2.q
//! [behavior]
//! id=C1 degree=2 fiber=p:2
//! id=C2 degree=2 fiber=q:2
//! ```
//!
//! `fiber` lists `point:index` pairs, one group per conjugation class with
//! classes separated by `|`; `extra` gives the anonymous indices of each class
//! in the same layout (unramified padding when omitted). A component may carry
//! `complete=true|false`; it defaults to whether any behavior is listed.

use std::collections::BTreeMap;
use std::fmt::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};

use crate::cover::CoverMap;
use crate::curve_graph::{CurveGraph, PointRef};
use crate::dot;
use crate::gonality::{
    classify_trigonal, component_lower_bound, exact_gonality_one_node, generic_upper_bound, two_component_bound,
    ComponentProfile, MapBehavior, Verdict,
};
use crate::oracle::{min_admissible_degree, EnumerationBudget, OracleValue};
use crate::surgery::{glue_covers, to_admissible, GluePiece, NodeIncidence};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed document: the curve and one profile per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveDocument {
    pub curve: CurveGraph,
    pub profiles: BTreeMap<String, ComponentProfile>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    None,
    Component,
    Node,
    Behavior,
}

struct Field<'a> {
    key: &'a str,
    value: &'a str,
    column: usize,
}

fn fields(line: &str) -> Result<Vec<Field<'_>>, (usize, String)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for tok in line.split_whitespace() {
        let start = offset + line[offset..].find(tok).unwrap();
        offset = start + tok.len();
        let Some((key, value)) = tok.split_once('=') else {
            return Err((start + 1, format!("expected key=value, found `{tok}`")));
        };
        out.push(Field {
            key,
            value,
            column: start + 1,
        });
    }
    Ok(out)
}

fn parse_u32(f: &Field<'_>, line: usize) -> Result<u32, ParseError> {
    f.value.parse().map_err(|_| ParseError {
        line,
        column: f.column,
        message: format!("`{}` expects a nonnegative integer, found `{}`", f.key, f.value),
    })
}

struct PendingComponent {
    genus: u32,
    gonality: Option<u32>,
    complete: Option<bool>,
    line: usize,
}

/// Parses a document, reporting the first problem with its position.
pub fn parse(text: &str) -> Result<CurveDocument, ParseError> {
    let mut block = Block::None;
    let mut curve = CurveGraph::new();
    let mut comps: BTreeMap<String, PendingComponent> = BTreeMap::new();
    let mut behaviors: Vec<(String, MapBehavior, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap();
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let err = |column: usize, message: String| ParseError { line, column, message };
        let indent = body.len() - body.trim_start().len();
        if trimmed.starts_with('[') {
            block = match trimmed {
                "[component]" => Block::Component,
                "[node]" => Block::Node,
                "[behavior]" => Block::Behavior,
                other => return Err(err(indent + 1, format!("unknown block `{other}`"))),
            };
            continue;
        }
        let fs = fields(body).map_err(|(c, m)| err(c, m))?;
        let get = |key: &str| fs.iter().find(|f| f.key == key);
        let require = |key: &str| get(key).ok_or_else(|| err(indent + 1, format!("missing `{key}`")));
        let allowed: &[&str] = match block {
            Block::None => return Err(err(indent + 1, "record outside of a block".into())),
            Block::Component => &["id", "genus", "gonality", "complete"],
            Block::Node => &["id", "branches"],
            Block::Behavior => &["id", "degree", "fiber", "extra"],
        };
        if let Some(f) = fs.iter().find(|f| !allowed.contains(&f.key)) {
            return Err(err(f.column, format!("unknown key `{}`", f.key)));
        }
        let id = require("id")?;
        match block {
            Block::Component => {
                let genus = parse_u32(require("genus")?, line)?;
                let gonality = get("gonality").map(|f| parse_u32(f, line)).transpose()?;
                let complete = match get("complete") {
                    None => None,
                    Some(f) => Some(f.value.parse::<bool>().map_err(|_| err(f.column, "`complete` expects true or false".into()))?),
                };
                curve
                    .add_component(id.value, genus)
                    .map_err(|e| err(id.column, e.to_string()))?;
                comps.insert(
                    id.value.to_string(),
                    PendingComponent {
                        genus,
                        gonality,
                        complete,
                        line,
                    },
                );
            }
            Block::Node => {
                let f = require("branches")?;
                let parts: Vec<&str> = f.value.split(',').collect();
                if parts.len() != 2 {
                    return Err(err(f.column, "`branches` expects two Component.point entries".into()));
                }
                let mut refs = Vec::new();
                for p in parts {
                    let Some((c, pt)) = p.split_once('.') else {
                        return Err(err(f.column, format!("`{p}` is not of the form Component.point")));
                    };
                    if curve.component(c).is_none() {
                        return Err(err(f.column, format!("dangling reference to component `{c}`")));
                    }
                    refs.push(PointRef::new(c, pt));
                }
                let b = refs.pop().unwrap();
                let a = refs.pop().unwrap();
                curve.add_node(id.value, a, b).map_err(|e| err(id.column, e.to_string()))?;
            }
            Block::Behavior => {
                if !comps.contains_key(id.value) {
                    return Err(err(id.column, format!("dangling reference to component `{}`", id.value)));
                }
                let df = require("degree")?;
                let degree = parse_u32(df, line)?;
                let ff = require("fiber")?;
                let classes: Vec<&str> = ff.value.split('|').collect();
                let extras: Vec<Option<Vec<u32>>> = match get("extra") {
                    None => vec![None; classes.len()],
                    Some(ef) => {
                        let groups: Vec<&str> = ef.value.split('|').collect();
                        if groups.len() != classes.len() {
                            return Err(err(ef.column, format!("`extra` has {} classes, `fiber` has {}", groups.len(), classes.len())));
                        }
                        groups
                            .iter()
                            .map(|g| {
                                g.split(',')
                                    .filter(|s| !s.is_empty())
                                    .map(|s| s.parse::<u32>().map_err(|_| err(ef.column, format!("bad index `{s}`"))))
                                    .collect::<Result<Vec<u32>, _>>()
                                    .map(Some)
                            })
                            .collect::<Result<_, _>>()?
                    }
                };
                let mut m = MapBehavior::new(degree);
                for (ci, (cls, extra)) in classes.iter().zip(extras).enumerate() {
                    let mut pts: Vec<(&str, u32)> = Vec::new();
                    for entry in cls.split(',').filter(|s| !s.is_empty()) {
                        let Some((p, e)) = entry.split_once(':') else {
                            return Err(err(ff.column, format!("`{entry}` is not of the form point:index")));
                        };
                        let e: u32 = e.parse().map_err(|_| err(ff.column, format!("bad index `{e}`")))?;
                        if curve.owner_of(p) != Some(id.value) || curve.node_at(p).is_none() {
                            return Err(err(ff.column, format!("dangling point reference `{p}`: not a node branch on `{}`", id.value)));
                        }
                        pts.push((p, e));
                    }
                    let sum: u32 = pts.iter().map(|(_, e)| e).sum::<u32>() + extra.iter().flatten().sum::<u32>();
                    if sum > degree || (extra.is_some() && sum != degree) {
                        return Err(err(
                            ff.column,
                            format!(
                                "behavior on `{}`: class {ci} indices sum to {sum}, but the indices over a fiber must sum to the degree {degree}",
                                id.value
                            ),
                        ));
                    }
                    m = match extra {
                        Some(x) => m.with_class(&pts, &x),
                        None => m.with_padded_class(&pts),
                    };
                }
                m.validate().map_err(|e| err(df.column, format!("behavior on `{}`: {e}", id.value)))?;
                behaviors.push((id.value.to_string(), m, line));
            }
            Block::None => unreachable!(),
        }
    }
    let mut profiles = BTreeMap::new();
    for (id, pc) in &comps {
        let own: Vec<&(String, MapBehavior, usize)> = behaviors.iter().filter(|(c, _, _)| c == id).collect();
        let gonality = pc
            .gonality
            .or_else(|| own.iter().map(|(_, b, _)| b.degree).min())
            .unwrap_or(if pc.genus == 0 { 1 } else { 2 });
        let mut p = ComponentProfile::new(pc.genus, gonality);
        p.complete = pc.complete.unwrap_or(!own.is_empty());
        for (_, b, _) in &own {
            p.behaviors.push(b.clone());
        }
        if let Err(e) = p.validate(&curve, id) {
            let line = own.first().map_or(pc.line, |x| x.2);
            return Err(ParseError {
                line,
                column: 1,
                message: e.to_string(),
            });
        }
        profiles.insert(id.clone(), p);
    }
    Ok(CurveDocument { curve, profiles })
}

/// Writes a document that parses back to `doc`.
pub fn serialize(doc: &CurveDocument) -> String {
    let mut out = String::from("[component]\n");
    for c in doc.curve.components() {
        let p = &doc.profiles[&c.id];
        let _ = write!(out, "id={} genus={} gonality={}", c.id, c.genus, p.gonality);
        if p.complete == p.behaviors.is_empty() {
            let _ = write!(out, " complete={}", p.complete);
        }
        out.push('\n');
    }
    if doc.curve.num_nodes() > 0 {
        out.push_str("[node]\n");
        for n in doc.curve.nodes() {
            let _ = writeln!(out, "id={} branches={},{}", n.id, n.branch_a, n.branch_b);
        }
    }
    let any = doc.profiles.values().any(|p| !p.behaviors.is_empty());
    if any {
        out.push_str("[behavior]\n");
    }
    for (id, p) in &doc.profiles {
        for b in &p.behaviors {
            let fiber: Vec<String> = b
                .classes
                .iter()
                .map(|c| {
                    c.branches
                        .iter()
                        .map(|x| format!("{}:{}", x.point, x.index))
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            let extra: Vec<String> = b
                .classes
                .iter()
                .map(|c| c.extra.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
                .collect();
            let _ = writeln!(out, "id={id} degree={} fiber={} extra={}", b.degree, fiber.join("|"), extra.join("|"));
        }
    }
    out
}

/// Human readable dump of a cover.
pub fn describe_cover(cm: &CoverMap) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "degree {}", cm.degree().map_or("?".to_string(), |k| k.to_string()));
    let tgt = cm.target.curve();
    let _ = writeln!(out, "target components: {}", tgt.component_ids().into_iter().collect::<Vec<_>>().join(", "));
    for n in tgt.nodes() {
        let _ = writeln!(out, "target node {}: {} ~ {}", n.id, n.branch_a, n.branch_b);
    }
    for d in cm.parts.values() {
        let g = cm.source.component(&d.source).map_or(0, |c| c.genus);
        let _ = writeln!(
            out,
            "component {} g={} -> {} degree {} simple {}",
            d.source, g, d.target, d.degree, d.residual_simple
        );
        for (q, fiber) in &d.fibers {
            let pts: Vec<String> = fiber.iter().map(|p| format!("{}:{}", p.point, p.index)).collect();
            let _ = writeln!(out, "  over {q}: {}", pts.join(" "));
        }
    }
    for n in cm.source.nodes() {
        let _ = writeln!(out, "node {}: {} ~ {}", n.id, n.branch_a, n.branch_b);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Structure and stability checks
    Validate,
    /// Arithmetic genus
    Genus,
    /// Hyperelliptic and trigonal classification
    Classify,
    /// Bounds and the searched least degree
    Gonality,
    /// Glue the components' first maps along the nodes
    Glue,
    /// Glue, then make the result admissible
    Expand,
    /// Least-degree search with the witness cover
    Enumerate,
    /// Dual graph in DOT
    ExportDot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    pub cap: u32,
    pub format: Format,
    pub all_cases: bool,
    pub witness: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            cap: 6,
            format: Format::Text,
            all_cases: false,
            witness: false,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "admcover", version, about = "Admissible covers and gonality of two-component stable curves")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// Document path; standard input when omitted or `-`
    #[arg(global = true)]
    pub input: Option<String>,
    /// Degree cap for the search
    #[arg(long, global = true, default_value_t = 6)]
    pub cap: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// List every matching classification case
    #[arg(long, global = true)]
    pub all_cases: bool,
    /// Print the witness cover
    #[arg(long, global = true)]
    pub witness: bool,
}

impl Args {
    pub fn flags(&self) -> Flags {
        Flags {
            cap: self.cap,
            format: self.format,
            all_cases: self.all_cases,
            witness: self.witness,
        }
    }
}

/// Report text and exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub code: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, code: EXIT_OK }
    }
    fn usage(text: String) -> Self {
        Report { text, code: EXIT_USAGE }
    }
    fn undecided(text: String) -> Self {
        Report { text, code: EXIT_UNDECIDED }
    }
}

fn two_profiles(doc: &CurveDocument) -> Option<(&ComponentProfile, &ComponentProfile)> {
    let v: Vec<&ComponentProfile> = doc.profiles.values().collect();
    (v.len() == 2).then(|| (v[0], v[1]))
}

fn emit_cover(out: &mut String, cm: &CoverMap, format: Format) {
    match format {
        Format::Text => out.push_str(&describe_cover(cm)),
        Format::Dot => out.push_str(&dot::cover_to_dot(cm)),
    }
}

/// First-behavior indices at each node, for labelling.
fn node_indices(doc: &CurveDocument) -> Option<BTreeMap<String, (u32, u32)>> {
    doc.curve
        .nodes()
        .map(|n| {
            let idx = |p: &PointRef| doc.profiles.get(&p.component)?.behaviors.first()?.index_of(&p.point);
            Some((n.id.clone(), (idx(&n.branch_a)?, idx(&n.branch_b)?)))
        })
        .collect()
}

/// Glues the first behavior of every component along the nodes.
fn glue_document(doc: &CurveDocument) -> Result<crate::surgery::GlueOutcome, String> {
    let ids: Vec<String> = doc.curve.component_ids().into_iter().collect();
    let mut pieces = Vec::new();
    let mut slot = BTreeMap::new();
    for (i, id) in ids.iter().enumerate() {
        let p = &doc.profiles[id];
        let b = p.behaviors.first().ok_or(format!("component `{id}` has no behavior"))?;
        let branches: Vec<&str> = doc.curve.branch_points(id);
        let class = branches.first().and_then(|x| b.class_of(x)).ok_or(format!("component `{id}` has no node branches"))?;
        if branches.iter().any(|x| b.class_of(x) != Some(class)) {
            return Err(format!("node branches on `{id}` are not conjugated under its first behavior"));
        }
        let cover = b.cover(id, p.genus).map_err(|e| e.to_string())?;
        pieces.push(GluePiece::new(cover, &b.class_point(id, class), &branches).map_err(|e| e.to_string())?);
        slot.insert(id.clone(), i);
    }
    let incidences: Vec<NodeIncidence> = doc
        .curve
        .nodes()
        .map(|n| {
            NodeIncidence::minimal(
                &pieces,
                &n.id,
                (slot[&n.branch_a.component], &n.branch_a.point),
                (slot[&n.branch_b.component], &n.branch_b.point),
            )
            .ok_or(format!("node `{}` does not join two pieces", n.id))
        })
        .collect::<Result<_, _>>()?;
    glue_covers(&pieces, &incidences).map_err(|e| e.to_string())
}

fn oracle_line(v: &OracleValue, cap: u32) -> String {
    match v {
        OracleValue::Exact { degree, .. } => format!("least degree: {degree}"),
        OracleValue::AboveCap => format!("above cap: no cover of degree at most {cap}"),
        OracleValue::Undecided => "undecided: profiles incomplete".into(),
    }
}

/// Runs one subcommand on a parsed document.
pub fn run(cmd: Command, doc: &CurveDocument, flags: &Flags) -> Report {
    let mut out = String::new();
    match cmd {
        Command::Validate => {
            let _ = writeln!(out, "components: {}", doc.curve.num_components());
            let _ = writeln!(out, "nodes: {}", doc.curve.num_nodes());
            let _ = writeln!(out, "connected: {}", doc.curve.is_connected());
            match doc.curve.is_stable() {
                Ok(s) => {
                    let _ = writeln!(out, "stable: {s}");
                }
                Err(e) => return Report::usage(format!("{e}\n")),
            }
            let _ = writeln!(out, "separating nodes: {}", doc.curve.separating_nodes().len());
            Report::ok(out)
        }
        Command::Genus => match doc.curve.genus() {
            Ok(g) => Report::ok(format!("{g}\n")),
            Err(e) => Report::usage(format!("{e}\n")),
        },
        Command::Classify => {
            let Some((p1, p2)) = two_profiles(doc) else {
                return Report::usage("classification needs exactly two components\n".into());
            };
            let r = match classify_trigonal(&doc.curve, p1, p2) {
                Ok(r) => r,
                Err(e) => return Report::usage(format!("{e}\n")),
            };
            let head = match r.verdict {
                Verdict::Undecided => return Report::undecided("undecided: profiles incomplete\n".into()),
                v => v.to_string(),
            };
            if r.cases.is_empty() {
                let _ = writeln!(out, "{head}");
            } else if flags.all_cases {
                let _ = writeln!(out, "{head} — {}", r.cases.join(", "));
            } else {
                let _ = writeln!(out, "{head} — {}", r.cases[0]);
            }
            if flags.witness {
                if let Some(w) = &r.witness {
                    emit_cover(&mut out, w, flags.format);
                }
            }
            Report::ok(out)
        }
        Command::Gonality => {
            let Some((p1, p2)) = two_profiles(doc) else {
                return Report::usage("gonality needs exactly two components\n".into());
            };
            let gons: BTreeMap<String, u32> = doc.profiles.iter().map(|(k, p)| (k.clone(), p.gonality)).collect();
            let _ = writeln!(out, "lower bound: {}", component_lower_bound(p1, p2));
            if let Ok(g) = generic_upper_bound(&doc.curve, &gons) {
                let _ = writeln!(out, "generic upper bound: {g}");
            }
            match two_component_bound(&doc.curve, p1, p2) {
                Ok(Some(b)) => {
                    let _ = writeln!(out, "two-component bound: {b}");
                }
                Ok(None) => out.push_str("two-component bound: none (no conjugated behaviors)\n"),
                Err(e) => return Report::usage(format!("{e}\n")),
            }
            let one_node = (doc.curve.num_nodes() == 1)
                .then(|| {
                    let n = doc.curve.nodes().next().unwrap();
                    let e = |p: &ComponentProfile, pt: &str| p.of_degree(p.gonality).filter_map(|b| b.index_of(pt)).max();
                    let (pa, pb) = (&doc.profiles[&n.branch_a.component], &doc.profiles[&n.branch_b.component]);
                    exact_gonality_one_node(pa.gonality, pb.gonality, e(pa, &n.branch_a.point)?, e(pb, &n.branch_b.point)?).ok()
                })
                .flatten();
            let v = match min_admissible_degree(&doc.curve, p1, p2, EnumerationBudget { cap: flags.cap }) {
                Ok(v) => v,
                Err(e) => return Report::usage(format!("{e}\n")),
            };
            match (&v, one_node) {
                (OracleValue::Exact { degree, .. }, Some(f)) if f == *degree => {
                    let _ = writeln!(out, "exact: {degree} (Thm B; oracle agrees)");
                }
                (OracleValue::Exact { degree, .. }, Some(f)) => {
                    let _ = writeln!(out, "exact: {degree} (oracle; Thm B formula gives {f})");
                }
                (OracleValue::Exact { degree, .. }, None) => {
                    let _ = writeln!(out, "exact: {degree} (oracle)");
                }
                (other, _) => {
                    out.push_str(&oracle_line(other, flags.cap));
                    out.push('\n');
                    return Report::undecided(out);
                }
            }
            Report::ok(out)
        }
        Command::Glue | Command::Expand => {
            let outcome = match glue_document(doc) {
                Ok(o) => o,
                Err(e) => return Report::usage(format!("{e}\n")),
            };
            let cm = if cmd == Command::Expand {
                match to_admissible(&outcome.cover) {
                    Ok(c) => c,
                    Err(e) => return Report::usage(format!("{e}\n")),
                }
            } else {
                let _ = writeln!(
                    out,
                    "quasi admissible: {}{}",
                    outcome.quasi_admissible,
                    if outcome.contracted { " (linking component contracted)" } else { "" }
                );
                outcome.cover
            };
            emit_cover(&mut out, &cm, flags.format);
            Report::ok(out)
        }
        Command::Enumerate => {
            let Some((p1, p2)) = two_profiles(doc) else {
                return Report::usage("enumeration needs exactly two components\n".into());
            };
            match min_admissible_degree(&doc.curve, p1, p2, EnumerationBudget { cap: flags.cap }) {
                Ok(OracleValue::Exact { degree, witness }) => {
                    let _ = writeln!(out, "least degree: {degree}");
                    emit_cover(&mut out, &witness, flags.format);
                    Report::ok(out)
                }
                Ok(other) => Report::undecided(format!("{}\n", oracle_line(&other, flags.cap))),
                Err(e) => Report::usage(format!("{e}\n")),
            }
        }
        Command::ExportDot => {
            out.push_str(&dot::curve_to_dot(&doc.curve, node_indices(doc).as_ref()));
            if let Ok(outcome) = glue_document(doc) {
                out.push_str(&dot::cover_to_dot(&outcome.cover));
            }
            Report::ok(out)
        }
    }
}

/// Parses `text` and runs the command; parse failures exit with code 1.
pub fn run_text(cmd: Command, text: &str, flags: &Flags) -> Report {
    match parse(text) {
        Ok(doc) => run(cmd, &doc, flags),
        Err(e) => Report::usage(format!("parse error: {e}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WEIERSTRASS: &str = "\
# compact type, both branches Weierstrass
[component]
id=C1 genus=2 gonality=2
id=C2 genus=2 gonality=2
[node]
id=n1 branches=C1.p,C2.q
[behavior]
id=C1 degree=2 fiber=p:2
id=C2 degree=2 fiber=q:2
";

    #[test]
    fn minimal_document_parses() {
        let doc = parse(WEIERSTRASS).unwrap();
        assert_eq!(doc.curve.num_components(), 2);
        assert_eq!(doc.curve.num_nodes(), 1);
        assert_eq!(doc.profiles["C1"].behaviors.len(), 1);
        assert!(doc.profiles["C1"].complete);
    }

    #[test]
    fn fiber_overflow_names_the_behavior() {
        let bad = WEIERSTRASS.replace("fiber=q:2", "fiber=q:3");
        let e = parse(&bad).unwrap_err();
        assert_eq!(e.line, 9);
        assert!(e.message.contains("`C2`"), "{e}");
    }

    #[test]
    fn dangling_point_is_reported_with_position() {
        let bad = WEIERSTRASS.replace("fiber=p:2", "fiber=z:2");
        let e = parse(&bad).unwrap_err();
        assert_eq!((e.line, e.column), (8, 16));
        assert!(e.message.contains("dangling"));
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let e = parse("[component]\nid=C1 genus\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
        let e = parse("id=C1\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse("[widget]\n").unwrap_err();
        assert!(e.message.contains("unknown block"));
    }

    #[test]
    fn document_without_behaviors_is_undecided() {
        let text = "[component]\nid=C1 genus=2\nid=C2 genus=2\n[node]\nid=n1 branches=C1.p,C2.q\n";
        let doc = parse(text).unwrap();
        assert!(doc.profiles.values().all(|p| p.behaviors.is_empty() && !p.complete));
        let r = run(Command::Classify, &doc, &Flags::default());
        assert_eq!(r.code, EXIT_UNDECIDED);
        let r = run(Command::Enumerate, &doc, &Flags::default());
        assert_eq!(r, Report::undecided("undecided: profiles incomplete\n".into()));
    }

    #[test]
    fn serialize_round_trips() {
        let doc = parse(WEIERSTRASS).unwrap();
        let again = parse(&serialize(&doc)).unwrap();
        assert_eq!(doc, again);
    }

    #[test]
    fn classify_weierstrass() {
        let r = run_text(Command::Classify, WEIERSTRASS, &Flags::default());
        assert_eq!(r.text, "hyperelliptic — Thm 5.3 (i)\n");
        assert_eq!(r.code, EXIT_OK);
    }

    #[test]
    fn gonality_three_three_one_one() {
        let text = "\
[component]
id=C1 genus=3 gonality=3
id=C2 genus=3 gonality=3
[node]
id=n1 branches=C1.p,C2.q
[behavior]
id=C1 degree=3 fiber=p:1
id=C2 degree=3 fiber=q:1
";
        let r = run_text(Command::Gonality, text, &Flags::default());
        assert!(r.text.ends_with("exact: 5 (Thm B; oracle agrees)\n"), "{}", r.text);
        assert_eq!(r.code, EXIT_OK);
    }
}

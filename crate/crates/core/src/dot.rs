//! Graphviz output for dual graphs and covers.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::cover::CoverMap;
use crate::curve_graph::CurveGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Dual graph of `curve`. Edges carry `e_a,e_b` when `indices` has the node.
pub fn curve_to_dot(curve: &CurveGraph, indices: Option<&BTreeMap<String, (u32, u32)>>) -> String {
    let mut out = String::from("graph dual {\n");
    for c in curve.components() {
        let _ = writeln!(out, "  {} [label={}];", quote(&c.id), quote(&format!("{}:g={}", c.id, c.genus)));
    }
    for n in curve.nodes() {
        let label = match indices.and_then(|m| m.get(&n.id)) {
            Some((a, b)) => format!("{} ({a},{b})", n.id),
            None => n.id.clone(),
        };
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(&n.branch_a.component),
            quote(&n.branch_b.component),
            quote(&label)
        );
    }
    out.push_str("}\n");
    out
}

/// Source dual graph with ramification indices on edges, target tree in a
/// separate cluster, and dashed arrows for the component map.
pub fn cover_to_dot(cm: &CoverMap) -> String {
    let mut out = String::from("digraph cover {\n  subgraph cluster_source {\n    label=\"source\";\n");
    for c in cm.source.components() {
        let _ = writeln!(out, "    {} [label={}];", quote(&c.id), quote(&format!("{}:g={}", c.id, c.genus)));
    }
    for n in cm.source.nodes() {
        let ea = cm.locate(&n.branch_a.component, &n.branch_a.point).map_or(0, |x| x.1);
        let eb = cm.locate(&n.branch_b.component, &n.branch_b.point).map_or(0, |x| x.1);
        let _ = writeln!(
            out,
            "    {} -> {} [dir=none, label={}];",
            quote(&n.branch_a.component),
            quote(&n.branch_b.component),
            quote(&format!("{ea},{eb}"))
        );
    }
    out.push_str("  }\n  subgraph cluster_target {\n    label=\"target\";\n");
    let tgt = cm.target.curve();
    for c in tgt.components() {
        let _ = writeln!(out, "    {} [label={}, shape=box];", quote(&format!("T:{}", c.id)), quote(&c.id));
    }
    for n in tgt.nodes() {
        let _ = writeln!(
            out,
            "    {} -> {} [dir=none];",
            quote(&format!("T:{}", n.branch_a.component)),
            quote(&format!("T:{}", n.branch_b.component))
        );
    }
    out.push_str("  }\n");
    for d in cm.parts.values() {
        let _ = writeln!(
            out,
            "  {} -> {} [style=dashed, label={}];",
            quote(&d.source),
            quote(&format!("T:{}", d.target)),
            quote(&d.degree.to_string())
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_graph::PointRef;

    #[test]
    fn dual_graph_labels() {
        let mut c = CurveGraph::new();
        c.add_component("C1", 2).unwrap();
        c.add_component("C2", 1).unwrap();
        c.add_node("n1", PointRef::new("C1", "p"), PointRef::new("C2", "q")).unwrap();
        let plain = curve_to_dot(&c, None);
        assert!(plain.contains("\"C1\" [label=\"C1:g=2\"];"));
        assert!(plain.contains("\"C1\" -- \"C2\" [label=\"n1\"];"));
        let idx: BTreeMap<String, (u32, u32)> = [("n1".to_string(), (2, 1))].into();
        assert!(curve_to_dot(&c, Some(&idx)).contains("[label=\"n1 (2,1)\"]"));
    }
}

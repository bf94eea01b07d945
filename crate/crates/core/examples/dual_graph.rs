//! Genus, stability, bridges, normalization and stable contraction of a
//! small nodal curve.

use admcover::curve_graph::{CurveGraph, PointRef};

fn main() {
    let mut c = CurveGraph::new();
    c.add_component("E", 1).unwrap();
    c.add_component("F", 2).unwrap();
    c.add_component("R", 0).unwrap();
    c.add_node("n1", PointRef::new("E", "x"), PointRef::new("R", "r1")).unwrap();
    c.add_node("n2", PointRef::new("R", "r2"), PointRef::new("F", "y")).unwrap();
    c.add_node("n3", PointRef::new("E", "x2"), PointRef::new("F", "y2")).unwrap();

    println!("arithmetic genus: {}", c.genus().unwrap());
    println!("stable: {}", c.is_stable().unwrap());
    println!("separating nodes: {:?}", c.separating_nodes());

    let norm = c.normalize_at("n3").unwrap();
    println!(
        "normalized at n3: genus {}, freed {} and {}",
        norm.curve.genus().unwrap(),
        norm.freed.0,
        norm.freed.1
    );

    let k = c.stable_contraction();
    println!("after contraction: {:?}", k.component_ids());
    println!("stably equivalent: {}", k.stably_equivalent(&c));
}

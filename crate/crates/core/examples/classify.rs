//! Hyperelliptic and trigonal classification of two-component curves.

use admcover::curve_graph::{CurveGraph, PointRef};
use admcover::gonality::{classify_trigonal, ComponentProfile, MapBehavior};

fn two_nodes(g1: u32, g2: u32) -> CurveGraph {
    let mut c = CurveGraph::new();
    c.add_component("C1", g1).unwrap();
    c.add_component("C2", g2).unwrap();
    c.add_node("n1", PointRef::new("C1", "a1"), PointRef::new("C2", "b1")).unwrap();
    c.add_node("n2", PointRef::new("C1", "a2"), PointRef::new("C2", "b2")).unwrap();
    c
}

fn main() {
    let c = two_nodes(2, 3);
    let hyp = ComponentProfile::new(2, 2).with_behavior(MapBehavior::new(2).with_padded_class(&[("a1", 1), ("a2", 1)]));
    let tri = ComponentProfile::new(3, 3).with_behavior(MapBehavior::new(3).with_padded_class(&[("b1", 1), ("b2", 1)]));
    let r = classify_trigonal(&c, &hyp, &tri).unwrap();
    println!("{} {:?}", r.verdict, r.cases);
    if let Some(w) = r.witness {
        println!("witness degree {:?}, admissible {}", w.degree(), w.is_admissible());
    }

    let far = ComponentProfile::new(3, 3).with_behavior(
        MapBehavior::new(3).with_padded_class(&[("b1", 1)]).with_padded_class(&[("b2", 1)]),
    );
    let r = classify_trigonal(&c, &hyp, &far).unwrap();
    println!("{} {:?}", r.verdict, r.cases);
}

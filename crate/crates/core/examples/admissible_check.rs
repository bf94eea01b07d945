//! Builds a double cover by hand and checks the admissibility conditions.

use admcover::cover::{ComponentMapDatum, CoverMap, FiberPoint, TargetTree};
use admcover::curve_graph::{CurveGraph, PointRef};

fn main() {
    // Two genus-1 curves glued at one point, each a double cover of a line
    // ramified at the node branch.
    let mut src = CurveGraph::new();
    src.add_component("E1", 1).unwrap();
    src.add_component("E2", 1).unwrap();
    src.add_node("n", PointRef::new("E1", "p"), PointRef::new("E2", "q")).unwrap();

    let mut tgt = CurveGraph::new();
    tgt.add_component("L1", 0).unwrap();
    tgt.add_component("L2", 0).unwrap();
    tgt.add_node("t", PointRef::new("L1", "s1"), PointRef::new("L2", "s2")).unwrap();

    let d1 = ComponentMapDatum::new("E1", "L1", 2)
        .with_fiber("s1", vec![FiberPoint::new("p", 2)])
        .with_residual(3);
    let d2 = ComponentMapDatum::new("E2", "L2", 2)
        .with_fiber("s2", vec![FiberPoint::new("q", 2)])
        .with_residual(3);
    let cm = CoverMap::new(src, TargetTree::new(tgt).unwrap(), [d1, d2]).unwrap();

    println!("degree: {:?}", cm.degree());
    println!("conditions 1 and 3 violations: {:?}", cm.check_condition_1_and_3());
    println!("condition 2 violations: {:?}", cm.condition2_violations());
    println!("condition 4 holds: {}", cm.check_condition4());
    println!("quasi admissible: {}", cm.is_quasi_admissible());
    println!("admissible: {}", cm.is_admissible());
    println!("global Riemann-Hurwitz: {}", cm.global_riemann_hurwitz());
}

//! Bounds and least admissible degree for one-node curves, against the
//! closed formula.

use admcover::curve_graph::{CurveGraph, PointRef};
use admcover::gonality::{component_lower_bound, exact_gonality_one_node, two_component_bound, ComponentProfile, MapBehavior};
use admcover::oracle::{min_admissible_degree, EnumerationBudget};

fn main() {
    let mut c = CurveGraph::new();
    c.add_component("C1", 3).unwrap();
    c.add_component("C2", 3).unwrap();
    c.add_node("n", PointRef::new("C1", "p"), PointRef::new("C2", "q")).unwrap();

    println!("e1 e2 | lower two-comp formula oracle");
    for e1 in 1..=3 {
        for e2 in 1..=3 {
            let p1 = ComponentProfile::new(3, 3).with_behavior(MapBehavior::new(3).with_padded_class(&[("p", e1)]));
            let p2 = ComponentProfile::new(3, 3).with_behavior(MapBehavior::new(3).with_padded_class(&[("q", e2)]));
            let formula = exact_gonality_one_node(3, 3, e1, e2).unwrap();
            let oracle = min_admissible_degree(&c, &p1, &p2, EnumerationBudget::default()).unwrap();
            println!(
                " {e1}  {e2} |   {}      {:?}      {formula}      {:?}",
                component_lower_bound(&p1, &p2),
                two_component_bound(&c, &p1, &p2).unwrap(),
                oracle.degree()
            );
        }
    }
}

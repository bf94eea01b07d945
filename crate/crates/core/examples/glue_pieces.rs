//! Glues two trigonal maps at a node and expands the result to an
//! admissible cover.

use admcover::gonality::MapBehavior;
use admcover::surgery::{glue_covers, to_admissible, GluePiece, NodeIncidence};

fn main() {
    // Triple covers of genus-3 curves; the node branch is a ramification
    // point of index 2 on the first and simple on the second.
    let b1 = MapBehavior::new(3).with_padded_class(&[("p", 2)]);
    let b2 = MapBehavior::new(3).with_padded_class(&[("q", 1)]);
    let pieces = vec![
        GluePiece::new(b1.cover("C1", 3).unwrap(), &b1.class_point("C1", 0), &["p"]).unwrap(),
        GluePiece::new(b2.cover("C2", 3).unwrap(), &b2.class_point("C2", 0), &["q"]).unwrap(),
    ];
    let node = NodeIncidence::minimal(&pieces, "n", (0, "p"), (1, "q")).unwrap();
    let e_n = node.e_n;

    let out = glue_covers(&pieces, &[node]).unwrap();
    println!(
        "glued degree {} (pieces {} + {} minus e_n = {e_n}), quasi admissible: {}",
        out.degree,
        pieces[0].degree(),
        pieces[1].degree(),
        out.quasi_admissible
    );

    let adm = to_admissible(&out.cover).unwrap();
    println!("expanded: admissible {}, degree {:?}", adm.is_admissible(), adm.degree());
    println!("source components: {:?}", adm.source.component_ids());
    println!("target components: {:?}", adm.target.curve().component_ids());
}

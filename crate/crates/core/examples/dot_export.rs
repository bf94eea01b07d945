//! DOT output for a dual graph and for a glued cover.

use std::collections::BTreeMap;

use admcover::cli::parse;
use admcover::dot::{cover_to_dot, curve_to_dot};
use admcover::oracle::{min_admissible_degree, EnumerationBudget, OracleValue};

fn main() {
    let text = include_str!("data/trigonal_pair.curve");
    let doc = parse(text).unwrap();
    let idx: BTreeMap<String, (u32, u32)> = [("n1".to_string(), (1, 1))].into();
    print!("{}", curve_to_dot(&doc.curve, Some(&idx)));

    let p: Vec<_> = doc.profiles.values().collect();
    if let OracleValue::Exact { witness, .. } = min_admissible_degree(&doc.curve, p[0], p[1], EnumerationBudget::default()).unwrap() {
        print!("{}", cover_to_dot(&witness));
    }
}

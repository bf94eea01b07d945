//! Existence of branched covers of the line with prescribed ramification.

use admcover::oracle::{cycle_type, hurwitz_exists, hurwitz_necessary, HurwitzDatum};

fn main() {
    let data = [
        HurwitzDatum::new(3, vec![vec![3], vec![3], vec![2, 1], vec![2, 1]]),
        HurwitzDatum::new(4, vec![vec![2, 2], vec![3, 1], vec![4]]),
        HurwitzDatum::new(4, vec![vec![2, 2], vec![2, 2], vec![3, 1]]),
    ];
    for h in &data {
        print!("degree {} profiles {:?} genus {:?}: ", h.degree, h.profiles, h.genus());
        if !hurwitz_necessary(h) {
            println!("fails the necessary conditions");
            continue;
        }
        match hurwitz_exists(h).unwrap() {
            Some(perms) => {
                let types: Vec<Vec<u32>> = perms.iter().map(|p| cycle_type(p)).collect();
                println!("realized by {perms:?} with cycle types {types:?}");
            }
            None => println!("no monodromy exists"),
        }
    }
}

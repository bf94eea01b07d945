#![allow(dead_code)]

use admcover::curve_graph::{CurveGraph, PointRef};
use admcover::gonality::{ComponentProfile, MapBehavior};

/// Components `C1`, `C2` joined by nodes `n{j}` at `a{j}` and `b{j}`.
pub fn two_curve(g1: u32, g2: u32, delta: usize) -> CurveGraph {
    let mut c = CurveGraph::new();
    c.add_component("C1", g1).unwrap();
    c.add_component("C2", g2).unwrap();
    for j in 1..=delta {
        c.add_node(format!("n{j}"), PointRef::new("C1", format!("a{j}")), PointRef::new("C2", format!("b{j}")))
            .unwrap();
    }
    c
}

pub fn branch_names(prefix: &str, delta: usize) -> Vec<String> {
    (1..=delta).map(|j| format!("{prefix}{j}")).collect()
}

/// Set partitions of `0..n`, blocks in order of least element.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in set_partitions(n - 1) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].push(n - 1);
            out.push(q);
        }
        let mut q = p.clone();
        q.push(vec![n - 1]);
        out.push(q);
    }
    out
}

/// Every degree-`k` behavior on the given branches: each conjugation pattern
/// with each assignment of indices, remaining sheets unramified.
pub fn all_behaviors(k: u32, points: &[String]) -> Vec<MapBehavior> {
    let mut out = Vec::new();
    for blocks in set_partitions(points.len()) {
        let mut assign = vec![1u32; points.len()];
        loop {
            let fits = blocks
                .iter()
                .all(|b| b.iter().map(|&j| assign[j]).sum::<u32>() <= k);
            if fits {
                let mut m = MapBehavior::new(k);
                for b in &blocks {
                    let pts: Vec<(&str, u32)> = b.iter().map(|&j| (points[j].as_str(), assign[j])).collect();
                    m = m.with_padded_class(&pts);
                }
                out.push(m);
            }
            let mut i = 0;
            while i < assign.len() && assign[i] == k {
                assign[i] = 1;
                i += 1;
            }
            if i == assign.len() {
                break;
            }
            assign[i] += 1;
        }
    }
    out
}

/// A smooth component carrying exactly one map: genus 2 for degree 2, genus 3 otherwise.
pub fn single_profile(b: &MapBehavior) -> ComponentProfile {
    let genus = if b.degree == 2 { 2 } else { 3 };
    ComponentProfile::new(genus, b.degree).with_behavior(b.clone())
}

pub fn one_class(k: u32, pts: &[(&str, u32)]) -> MapBehavior {
    MapBehavior::new(k).with_padded_class(pts)
}

//! Independent checks: Hurwitz existence by monodromy search, and the least
//! degree of an admissible cover by exhaustive search over cover shapes.
//!
//! A shape picks one map per component and one fiber on each (the designated
//! classes). Nodes with both branches designated are glued along a linking
//! line, the result is made admissible, and every other node is re-inserted
//! (free of charge when one branch is designated, at the cost of one sheet
//! otherwise). The shape's degree is therefore known before it is built:
//! `k_1 + k_2 − Σ_S min(e) + #(nodes with no designated branch)`.
//!
//! Rational tails need no separate enumeration. Every tail carries at least
//! one sheet over the component it covers, so a cover of degree `k` has at
//! most `k` of them over each target component, and the shapes above already
//! place one tail per sheet. Shapes where both components share one target
//! line cost at least `gon_1 + gon_2` and are skipped; values up to that sum
//! are exact relative to the profiles.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::cover::CoverMap;
use crate::curve_graph::CurveGraph;
use crate::gonality::{ComponentProfile, GonalityError, MapBehavior};
use crate::surgery::{assemble_two_component, node_pairs, ShapeSide};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("degree {0} exceeds the monodromy search bound of 6")]
    BoundExceeded(u32),
    #[error("profile `{0}` is not a partition of the degree")]
    BadProfile(usize),
    #[error("cap {cap} is below the component gonality {gonality}")]
    CapTooSmall { cap: u32, gonality: u32 },
    #[error(transparent)]
    Gonality(#[from] GonalityError),
}

/// Branch data of a cover of the line: one partition of the degree per branch point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HurwitzDatum {
    pub degree: u32,
    pub profiles: Vec<Vec<u32>>,
}

impl HurwitzDatum {
    pub fn new(degree: u32, profiles: Vec<Vec<u32>>) -> Self {
        HurwitzDatum { degree, profiles }
    }

    /// `Σ (k − length(λ))`.
    pub fn branch_total(&self) -> u32 {
        self.profiles
            .iter()
            .map(|p| self.degree.saturating_sub(p.len() as u32))
            .sum()
    }

    /// Genus of the source when the Riemann-Hurwitz count allows one.
    pub fn genus(&self) -> Option<u32> {
        let b = self.branch_total();
        if !b.is_multiple_of(2) || b + 2 < 2 * self.degree {
            return None;
        }
        Some((b + 2 - 2 * self.degree) / 2)
    }

    fn valid_partitions(&self) -> Result<(), OracleError> {
        for (i, p) in self.profiles.iter().enumerate() {
            if p.iter().sum::<u32>() != self.degree || p.contains(&0) {
                return Err(OracleError::BadProfile(i));
            }
        }
        Ok(())
    }
}

/// Parity and a nonnegative integral source genus.
pub fn hurwitz_necessary(h: &HurwitzDatum) -> bool {
    h.valid_partitions().is_ok() && h.degree > 0 && h.genus().is_some()
}

/// A permutation of `0..k` as images.
pub type Permutation = Vec<u8>;

pub fn cycle_type(p: &[u8]) -> Vec<u32> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn all_permutations(k: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..k as u8).collect();
    heap_permute(&mut cur, k, &mut out);
    out.sort();
    out
}

fn heap_permute(a: &mut Vec<u8>, n: usize, out: &mut Vec<Permutation>) {
    if n <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..n - 1 {
        heap_permute(a, n - 1, out);
        if n.is_multiple_of(2) {
            a.swap(i, n - 1);
        } else {
            a.swap(0, n - 1);
        }
    }
    heap_permute(a, n - 1, out);
}

/// `(a ∘ b)(x) = a(b(x))`.
pub fn compose(a: &[u8], b: &[u8]) -> Permutation {
    b.iter().map(|&x| a[x as usize]).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    product: [u8; 6],
    blocks: [u8; 6],
}

fn join_cycles(blocks: &[u8; 6], sigma: &[u8], k: usize) -> [u8; 6] {
    let mut b = *blocks;
    loop {
        let mut changed = false;
        for x in 0..k {
            let y = sigma[x] as usize;
            let m = b[x].min(b[y]);
            if b[x] != m || b[y] != m {
                let (bx, by) = (b[x], b[y]);
                for v in b.iter_mut().take(k) {
                    if *v == bx || *v == by {
                        *v = m;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            return b;
        }
    }
}

/// Searches for permutations of the given cycle types whose product is the
/// identity and which generate a transitive group. Returns one permutation per
/// profile on success, `None` when no such tuple exists.
pub fn hurwitz_exists(h: &HurwitzDatum) -> Result<Option<Vec<Permutation>>, OracleError> {
    h.valid_partitions()?;
    if h.degree > 6 {
        return Err(OracleError::BoundExceeded(h.degree));
    }
    if !hurwitz_necessary(h) {
        return Ok(None);
    }
    let k = h.degree as usize;
    let perms = all_permutations(k);
    let mut start = State {
        product: [0; 6],
        blocks: [0; 6],
    };
    for i in 0..k {
        start.product[i] = i as u8;
        start.blocks[i] = i as u8;
    }
    let mut layers: Vec<HashMap<State, (State, usize)>> = Vec::with_capacity(h.profiles.len());
    let mut frontier: Vec<State> = vec![start];
    let mut classes: Vec<Vec<&Permutation>> = Vec::new();
    for profile in &h.profiles {
        let mut want = profile.clone();
        want.sort_unstable_by(|a, b| b.cmp(a));
        let class: Vec<&Permutation> = perms.iter().filter(|p| cycle_type(p) == want).collect();
        let mut next: HashMap<State, (State, usize)> = HashMap::new();
        let mut order = Vec::new();
        for s in &frontier {
            for (ci, sigma) in class.iter().enumerate() {
                let prod = compose(&s.product[..k], sigma);
                let mut product = [0u8; 6];
                product[..k].copy_from_slice(&prod);
                let t = State {
                    product,
                    blocks: join_cycles(&s.blocks, sigma, k),
                };
                if let std::collections::hash_map::Entry::Vacant(v) = next.entry(t) {
                    v.insert((*s, ci));
                    order.push(t);
                }
            }
        }
        classes.push(class);
        layers.push(next);
        frontier = order;
    }
    let goal = frontier
        .into_iter()
        .find(|s| (0..k).all(|i| s.product[i] as usize == i && s.blocks[i] == 0));
    let Some(mut cur) = goal else {
        return Ok(None);
    };
    let mut witness = vec![Vec::new(); h.profiles.len()];
    for step in (0..h.profiles.len()).rev() {
        let (prev, ci) = layers[step][&cur];
        witness[step] = classes[step][ci].clone();
        cur = prev;
    }
    Ok(Some(witness))
}

/// Search limits for the least-degree search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub cap: u32,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { cap: 6 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleValue {
    Exact { degree: u32, witness: Box<CoverMap> },
    AboveCap,
    Undecided,
}

impl OracleValue {
    pub fn degree(&self) -> Option<u32> {
        match self {
            OracleValue::Exact { degree, .. } => Some(*degree),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Shape {
    degree: u32,
    b1: usize,
    b2: usize,
    d1: usize,
    d2: usize,
}

fn shapes(pairs: &[(String, String, String)], bs1: &[&MapBehavior], bs2: &[&MapBehavior], cap: u32) -> Vec<Shape> {
    let mut out = Vec::new();
    for (i1, b1) in bs1.iter().enumerate() {
        for (i2, b2) in bs2.iter().enumerate() {
            for d1 in 0..b1.classes.len() {
                for d2 in 0..b2.classes.len() {
                    let mut saved = 0;
                    let mut core = false;
                    let mut extra = 0;
                    for (_, x, y) in pairs {
                        let (in1, in2) = (b1.class_of(x) == Some(d1), b2.class_of(y) == Some(d2));
                        if in1 && in2 {
                            core = true;
                            saved += b1.index_of(x).unwrap().min(b2.index_of(y).unwrap());
                        } else if !in1 && !in2 {
                            extra += 1;
                        }
                    }
                    let degree = b1.degree + b2.degree + extra - saved;
                    if core && degree <= cap {
                        out.push(Shape { degree, b1: i1, b2: i2, d1, d2 });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Checks run on every assembled cover before it counts.
pub fn accept_cover(cm: &CoverMap, curve: &CurveGraph, degree: u32) -> bool {
    cm.is_admissible()
        && cm.degree() == Some(degree)
        && cm.source.stably_equivalent(curve)
        && cm.global_riemann_hurwitz()
        && verify_converse_inequalities(cm, curve)
}

/// Least degree over the shapes built from the given behaviors, with its cover.
/// Degree levels are exhausted in order so the result does not depend on
/// evaluation order.
pub fn cheapest_cover(
    curve: &CurveGraph,
    c1: &str,
    bs1: &[&MapBehavior],
    c2: &str,
    bs2: &[&MapBehavior],
    cap: u32,
) -> Option<(u32, CoverMap)> {
    let pairs = node_pairs(curve, c1, c2).ok()?;
    let all = shapes(&pairs, bs1, bs2, cap);
    let mut start = 0;
    while start < all.len() {
        let level = all[start].degree;
        let end = all[start..].iter().position(|s| s.degree != level).map_or(all.len(), |p| start + p);
        let hit = all[start..end]
            .par_iter()
            .map(|s| {
                let side1 = ShapeSide {
                    component: c1,
                    behavior: bs1[s.b1],
                    designated: s.d1,
                };
                let side2 = ShapeSide {
                    component: c2,
                    behavior: bs2[s.b2],
                    designated: s.d2,
                };
                assemble_two_component(curve, &side1, &side2)
                    .ok()
                    .filter(|cm| accept_cover(cm, curve, s.degree))
            })
            .find_first(Option::is_some)
            .flatten();
        if let Some(cm) = hit {
            return Some((level, cm));
        }
        start = end;
    }
    None
}

/// Least degree of an admissible cover of a curve stably equivalent to `c`,
/// using the maps listed in the profiles.
pub fn min_admissible_degree(
    c: &CurveGraph,
    p1: &ComponentProfile,
    p2: &ComponentProfile,
    budget: EnumerationBudget,
) -> Result<OracleValue, OracleError> {
    let ids: Vec<String> = c.component_ids().into_iter().collect();
    if ids.len() != 2 {
        return Err(GonalityError::NotTwoComponent.into());
    }
    for (id, p) in ids.iter().zip([p1, p2]) {
        if let Some(r) = c.component(id).filter(|x| x.genus == 0) {
            return Err(GonalityError::RationalComponent(r.id.clone()).into());
        }
        p.validate(c, id)?;
    }
    let gonality = p1.gonality.max(p2.gonality);
    if budget.cap < gonality {
        return Err(OracleError::CapTooSmall { cap: budget.cap, gonality });
    }
    if !(p1.complete && p2.complete) {
        return Ok(OracleValue::Undecided);
    }
    fn certified(p: &ComponentProfile, cap: u32) -> Vec<&MapBehavior> {
        p.behaviors
            .iter()
            .filter(|b| b.degree <= cap)
            .filter(|b| match b.hurwitz_datum(p.genus).map(|h| hurwitz_exists(&h)) {
                Some(Ok(w)) => w.is_some(),
                Some(Err(_)) => true,
                None => false,
            })
            .collect()
    }
    let (bs1, bs2) = (certified(p1, budget.cap), certified(p2, budget.cap));
    Ok(match cheapest_cover(c, &ids[0], &bs1, &ids[1], &bs2, budget.cap) {
        Some((degree, witness)) => OracleValue::Exact { degree, witness: Box::new(witness) },
        None => OracleValue::AboveCap,
    })
}

/// The degree inequalities a quasi admissible cover of a two-component curve
/// must satisfy. Covers of curves of other shapes pass vacuously.
pub fn verify_converse_inequalities(cm: &CoverMap, curve: &CurveGraph) -> bool {
    let ids: Vec<String> = curve.component_ids().into_iter().collect();
    if ids.len() != 2 {
        return true;
    }
    let Ok(pairs) = node_pairs(curve, &ids[0], &ids[1]) else {
        return true;
    };
    let (Ok(d1), Ok(d2), Some(k)) = (cm.restrict(&ids[0]), cm.restrict(&ids[1]), cm.degree()) else {
        return true;
    };
    let (k1, k2) = (d1.degree, d2.degree);
    if d1.target == d2.target {
        return k >= k1 + k2;
    }
    let mut q1 = BTreeSet::new();
    let mut q2 = BTreeSet::new();
    let mut e_sum = 0;
    for (_, x, y) in &pairs {
        let (Some((b1, e1)), Some((b2, e2))) = (cm.locate(&ids[0], x), cm.locate(&ids[1], y)) else {
            return false;
        };
        q1.insert(b1);
        q2.insert(b2);
        e_sum += e1.min(e2);
    }
    if k + 1 < k1 + q1.len() as u32 || k + 1 < k2 + q2.len() as u32 {
        return false;
    }
    if q1.len() == 1 && q2.len() == 1 && k + e_sum < k1 + k2 {
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_graph::PointRef;

    fn check_witness(h: &HurwitzDatum, w: &[Permutation]) {
        let k = h.degree as usize;
        let mut prod: Permutation = (0..k as u8).collect();
        for (p, profile) in w.iter().zip(&h.profiles) {
            let mut want = profile.clone();
            want.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(cycle_type(p), want);
            prod = compose(&prod, p);
        }
        assert_eq!(prod, (0..k as u8).collect::<Vec<_>>());
        // transitivity by orbit of 0
        let mut orbit = BTreeSet::from([0u8]);
        loop {
            let grown: BTreeSet<u8> = orbit.iter().flat_map(|&x| w.iter().map(move |p| p[x as usize])).collect();
            let next: BTreeSet<u8> = orbit.union(&grown).copied().collect();
            if next == orbit {
                break;
            }
            orbit = next;
        }
        assert_eq!(orbit.len(), k);
    }

    #[test]
    fn necessary_conditions_examples() {
        let h = HurwitzDatum::new(3, vec![vec![3], vec![3]]);
        assert!(hurwitz_necessary(&h));
        assert_eq!(h.genus(), Some(0));
        assert!(!hurwitz_necessary(&HurwitzDatum::new(3, vec![vec![2, 1]; 3])));
        let h = HurwitzDatum::new(2, vec![vec![2]; 6]);
        assert!(hurwitz_necessary(&h));
        assert_eq!(h.genus(), Some(2));
    }

    #[test]
    fn existence_examples() {
        let h = HurwitzDatum::new(3, vec![vec![3], vec![3]]);
        let w = hurwitz_exists(&h).unwrap().unwrap();
        check_witness(&h, &w);
        let h = HurwitzDatum::new(2, vec![vec![2], vec![2]]);
        check_witness(&h, &hurwitz_exists(&h).unwrap().unwrap());
        assert_eq!(hurwitz_exists(&HurwitzDatum::new(4, vec![vec![2, 1, 1]])).unwrap(), None);
        assert!(matches!(
            hurwitz_exists(&HurwitzDatum::new(7, vec![vec![7], vec![7]])),
            Err(OracleError::BoundExceeded(7))
        ));
    }

    #[test]
    fn existence_rejects_non_transitive_data() {
        // (12)(34) twice has identity product but two orbits
        let h = HurwitzDatum::new(4, vec![vec![2, 2], vec![2, 2]]);
        assert_eq!(h.genus(), None);
        let h = HurwitzDatum::new(4, vec![vec![2, 2], vec![2, 2], vec![2, 2], vec![2, 2]]);
        let w = hurwitz_exists(&h).unwrap().unwrap();
        check_witness(&h, &w);
    }

    fn two(g1: u32, g2: u32, nodes: usize) -> CurveGraph {
        let mut c = CurveGraph::new();
        c.add_component("C1", g1).unwrap();
        c.add_component("C2", g2).unwrap();
        for j in 1..=nodes {
            c.add_node(format!("n{j}"), PointRef::new("C1", format!("a{j}")), PointRef::new("C2", format!("b{j}")))
                .unwrap();
        }
        c
    }

    fn prof(g: u32, gon: u32, pts: &[(&str, u32)]) -> ComponentProfile {
        ComponentProfile::new(g, gon).with_behavior(MapBehavior::new(gon).with_padded_class(pts))
    }

    #[test]
    fn least_degree_examples() {
        let c = two(2, 2, 1);
        let v = min_admissible_degree(&c, &prof(2, 2, &[("a1", 1)]), &prof(2, 2, &[("b1", 1)]), EnumerationBudget::default()).unwrap();
        assert_eq!(v.degree(), Some(3));
        let v = min_admissible_degree(&c, &prof(2, 2, &[("a1", 2)]), &prof(2, 2, &[("b1", 2)]), EnumerationBudget::default()).unwrap();
        assert_eq!(v.degree(), Some(2));
        let c = two(3, 3, 3);
        let p1 = prof(3, 3, &[("a1", 1), ("a2", 1), ("a3", 1)]);
        let p2 = prof(3, 3, &[("b1", 1), ("b2", 1), ("b3", 1)]);
        let v = min_admissible_degree(&c, &p1, &p2, EnumerationBudget::default()).unwrap();
        assert_eq!(v.degree(), Some(3));
        if let OracleValue::Exact { witness, .. } = v {
            assert!(verify_converse_inequalities(&witness, &c));
        }
    }

    #[test]
    fn incomplete_profiles_are_undecided() {
        let c = two(2, 2, 1);
        let v = min_admissible_degree(&c, &prof(2, 2, &[("a1", 1)]).incomplete(), &prof(2, 2, &[("b1", 1)]), EnumerationBudget::default());
        assert_eq!(v.unwrap(), OracleValue::Undecided);
    }

    #[test]
    fn small_cap_reports_above_cap() {
        let c = two(3, 3, 1);
        let v = min_admissible_degree(&c, &prof(3, 3, &[("a1", 1)]), &prof(3, 3, &[("b1", 1)]), EnumerationBudget { cap: 4 });
        assert_eq!(v.unwrap(), OracleValue::AboveCap);
    }
}

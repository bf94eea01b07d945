//! Combinatorial nodal curves.
//!
//! A [`CurveGraph`] is the dual graph of a nodal curve decorated with the
//! geometric genus of each component and the branch points of each node.
//! Components are vertices, nodes are edges (self-loops allowed). Points on a
//! component that are not used by a node are free marked points.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("component `{0}` already exists")]
    DuplicateComponent(String),
    #[error("node `{0}` already exists")]
    DuplicateNode(String),
    #[error("point `{point}` already lives on component `{owner}`")]
    PointOwned { point: String, owner: String },
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("point `{0}` is already a branch of node `{1}`")]
    PointInUse(String, String),
    #[error("node `{0}` uses the same point twice")]
    SameBranch(String),
    #[error("genus undefined for disconnected curve in this artifact")]
    Disconnected,
    #[error("stability undefined below genus 2 without marks")]
    GenusTooSmall,
    #[error("node `{0}` is not separating")]
    NotSeparating(String),
    #[error("subcurve must be nonempty")]
    EmptySubcurve,
    #[error("subcurve must be a proper subcurve")]
    FullSubcurve,
}

/// A point on a named component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointRef {
    pub component: String,
    pub point: String,
}

impl PointRef {
    pub fn new(component: impl Into<String>, point: impl Into<String>) -> Self {
        PointRef {
            component: component.into(),
            point: point.into(),
        }
    }
}

impl fmt::Display for PointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.component, self.point)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub genus: u32,
    pub points: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeRecord {
    pub id: String,
    pub branch_a: PointRef,
    pub branch_b: PointRef,
}

impl NodeRecord {
    pub fn is_self_node(&self) -> bool {
        self.branch_a.component == self.branch_b.component
    }

    /// The branch on the other side of `point`, if `point` is one of the two branches.
    pub fn opposite(&self, point: &str) -> Option<&PointRef> {
        if self.branch_a.point == point {
            Some(&self.branch_b)
        } else if self.branch_b.point == point {
            Some(&self.branch_a)
        } else {
            None
        }
    }
}

/// Decorated dual graph of a nodal curve.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CurveGraph {
    components: BTreeMap<String, Component>,
    nodes: BTreeMap<String, NodeRecord>,
    owner: BTreeMap<String, String>,
    node_of_point: BTreeMap<String, String>,
}

/// Result of normalizing a curve at one node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub curve: CurveGraph,
    pub freed: (PointRef, PointRef),
}

/// Complement of a subcurve together with the nodes joining it to the subcurve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complement {
    pub components: BTreeSet<String>,
    pub intersection: BTreeSet<String>,
}

impl CurveGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_component(&mut self, id: impl Into<String>, genus: u32) -> Result<(), CurveError> {
        let id = id.into();
        if self.components.contains_key(&id) {
            return Err(CurveError::DuplicateComponent(id));
        }
        self.components.insert(
            id.clone(),
            Component {
                id,
                genus,
                points: BTreeSet::new(),
            },
        );
        Ok(())
    }

    /// Adds a free point to a component. Adding a point that already lives on
    /// the same component is a no-op.
    pub fn add_point(&mut self, component: &str, point: impl Into<String>) -> Result<(), CurveError> {
        let point = point.into();
        if let Some(owner) = self.owner.get(&point) {
            if owner == component {
                return Ok(());
            }
            return Err(CurveError::PointOwned {
                point,
                owner: owner.clone(),
            });
        }
        let comp = self
            .components
            .get_mut(component)
            .ok_or_else(|| CurveError::UnknownComponent(component.to_string()))?;
        comp.points.insert(point.clone());
        self.owner.insert(point, component.to_string());
        Ok(())
    }

    /// Adds a node between two points, creating the points when missing.
    pub fn add_node(&mut self, id: impl Into<String>, a: PointRef, b: PointRef) -> Result<(), CurveError> {
        let id = id.into();
        if self.nodes.contains_key(&id) {
            return Err(CurveError::DuplicateNode(id));
        }
        if a.point == b.point {
            return Err(CurveError::SameBranch(id));
        }
        for p in [&a, &b] {
            if let Some(n) = self.node_of_point.get(&p.point) {
                return Err(CurveError::PointInUse(p.point.clone(), n.clone()));
            }
            if let Some(owner) = self.owner.get(&p.point) {
                if owner != &p.component {
                    return Err(CurveError::PointOwned {
                        point: p.point.clone(),
                        owner: owner.clone(),
                    });
                }
            } else if !self.components.contains_key(&p.component) {
                return Err(CurveError::UnknownComponent(p.component.clone()));
            }
        }
        self.add_point(&a.component, a.point.clone())?;
        self.add_point(&b.component, b.point.clone())?;
        self.node_of_point.insert(a.point.clone(), id.clone());
        self.node_of_point.insert(b.point.clone(), id.clone());
        self.nodes.insert(
            id.clone(),
            NodeRecord {
                id,
                branch_a: a,
                branch_b: b,
            },
        );
        Ok(())
    }

    pub fn remove_node(&mut self, id: &str) -> Result<NodeRecord, CurveError> {
        let node = self
            .nodes
            .remove(id)
            .ok_or_else(|| CurveError::UnknownNode(id.to_string()))?;
        self.node_of_point.remove(&node.branch_a.point);
        self.node_of_point.remove(&node.branch_b.point);
        Ok(node)
    }

    fn remove_component(&mut self, id: &str) {
        if let Some(comp) = self.components.remove(id) {
            for p in comp.points {
                self.owner.remove(&p);
            }
        }
    }

    pub fn components(&self) -> impl Iterator<Item = &Component> {
        self.components.values()
    }

    pub fn component_ids(&self) -> BTreeSet<String> {
        self.components.keys().cloned().collect()
    }

    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.get(id)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &NodeRecord> {
        self.nodes.values()
    }

    pub fn node(&self, id: &str) -> Option<&NodeRecord> {
        self.nodes.get(id)
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn owner_of(&self, point: &str) -> Option<&str> {
        self.owner.get(point).map(String::as_str)
    }

    pub fn node_at(&self, point: &str) -> Option<&NodeRecord> {
        self.node_of_point.get(point).and_then(|n| self.nodes.get(n))
    }

    pub fn is_free_point(&self, point: &str) -> bool {
        self.owner.contains_key(point) && !self.node_of_point.contains_key(point)
    }

    /// Number of node branches lying on a component (a self-node counts twice).
    pub fn valence(&self, component: &str) -> usize {
        self.components
            .get(component)
            .map(|c| c.points.iter().filter(|p| self.node_of_point.contains_key(*p)).count())
            .unwrap_or(0)
    }

    /// Node branch points lying on a component.
    pub fn branch_points(&self, component: &str) -> Vec<&str> {
        self.components
            .get(component)
            .map(|c| {
                c.points
                    .iter()
                    .filter(|p| self.node_of_point.contains_key(*p))
                    .map(String::as_str)
                    .collect()
            })
            .unwrap_or_default()
    }

    fn adjacency(&self) -> BTreeMap<&str, Vec<(&str, &str)>> {
        let mut adj: BTreeMap<&str, Vec<(&str, &str)>> =
            self.components.keys().map(|k| (k.as_str(), Vec::new())).collect();
        for n in self.nodes.values() {
            let (a, b) = (n.branch_a.component.as_str(), n.branch_b.component.as_str());
            adj.get_mut(a).unwrap().push((b, n.id.as_str()));
            if a != b {
                adj.get_mut(b).unwrap().push((a, n.id.as_str()));
            }
        }
        adj
    }

    /// Connected components of the dual graph, as sets of component ids.
    pub fn connected_parts(&self) -> Vec<BTreeSet<String>> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut parts = Vec::new();
        for start in self.components.keys() {
            if seen.contains(start.as_str()) {
                continue;
            }
            let mut part = BTreeSet::new();
            let mut queue = VecDeque::from([start.as_str()]);
            seen.insert(start.as_str());
            while let Some(v) = queue.pop_front() {
                part.insert(v.to_string());
                for &(w, _) in &adj[v] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            parts.push(part);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.connected_parts().len() <= 1
    }

    /// First Betti number of the dual graph.
    pub fn betti_number(&self) -> usize {
        self.nodes.len() + self.connected_parts().len() - self.components.len()
    }

    pub fn genus(&self) -> Result<u32, CurveError> {
        if !self.is_connected() || self.components.is_empty() {
            return Err(CurveError::Disconnected);
        }
        Ok(self.genus_sum())
    }

    /// Σ genus over connected parts; equals [`genus`](Self::genus) for connected curves.
    pub fn genus_sum(&self) -> u32 {
        self.components.values().map(|c| c.genus).sum::<u32>() + self.betti_number() as u32
    }

    pub fn is_stable(&self) -> Result<bool, CurveError> {
        if self.genus()? < 2 {
            return Err(CurveError::GenusTooSmall);
        }
        Ok(self
            .components
            .values()
            .filter(|c| c.genus == 0)
            .all(|c| self.valence(&c.id) >= 3))
    }

    pub fn is_rational_chain(&self) -> bool {
        self.is_connected()
            && self.components.values().all(|c| c.genus == 0)
            && self.nodes.len() + 1 == self.components.len()
    }

    /// Bridges of the dual graph (low-link search over the multigraph).
    pub fn separating_nodes(&self) -> BTreeSet<String> {
        struct Search<'a> {
            adj: BTreeMap<&'a str, Vec<(&'a str, &'a str)>>,
            disc: BTreeMap<&'a str, usize>,
            low: BTreeMap<&'a str, usize>,
            time: usize,
            bridges: BTreeSet<String>,
        }
        impl<'a> Search<'a> {
            fn visit(&mut self, v: &'a str, via: Option<&'a str>) {
                self.time += 1;
                self.disc.insert(v, self.time);
                self.low.insert(v, self.time);
                let edges = self.adj[v].clone();
                for (w, e) in edges {
                    if Some(e) == via || w == v {
                        continue;
                    }
                    if let Some(&d) = self.disc.get(w) {
                        let l = self.low[v].min(d);
                        self.low.insert(v, l);
                    } else {
                        self.visit(w, Some(e));
                        let l = self.low[v].min(self.low[w]);
                        self.low.insert(v, l);
                        if self.low[w] > self.disc[v] {
                            self.bridges.insert(e.to_string());
                        }
                    }
                }
            }
        }
        let mut s = Search {
            adj: self.adjacency(),
            disc: BTreeMap::new(),
            low: BTreeMap::new(),
            time: 0,
            bridges: BTreeSet::new(),
        };
        for v in self.components.keys() {
            if !s.disc.contains_key(v.as_str()) {
                s.visit(v, None);
            }
        }
        s.bridges
    }

    /// Induced subcurve on a set of components; nodes leaving the set are dropped
    /// and their branches on the set stay behind as free points.
    pub fn subcurve(&self, comps: &BTreeSet<String>) -> CurveGraph {
        let mut out = CurveGraph::new();
        for id in comps {
            if let Some(c) = self.components.get(id) {
                out.add_component(id.clone(), c.genus).unwrap();
                for p in &c.points {
                    out.add_point(id, p.clone()).unwrap();
                }
            }
        }
        for n in self.nodes.values() {
            if comps.contains(&n.branch_a.component) && comps.contains(&n.branch_b.component) {
                out.add_node(n.id.clone(), n.branch_a.clone(), n.branch_b.clone()).unwrap();
            }
        }
        out
    }

    /// The two tails at a separating node. The first tail contains `branch_a`.
    pub fn tails(&self, node: &str) -> Result<(CurveGraph, CurveGraph), CurveError> {
        if !self.nodes.contains_key(node) {
            return Err(CurveError::UnknownNode(node.to_string()));
        }
        if !self.separating_nodes().contains(node) {
            return Err(CurveError::NotSeparating(node.to_string()));
        }
        let norm = self.normalize_at(node)?;
        let parts = norm.curve.connected_parts();
        let (first, second): (Vec<_>, Vec<_>) = parts
            .into_iter()
            .partition(|p| p.contains(&norm.freed.0.component));
        Ok((
            norm.curve.subcurve(&first[0]),
            norm.curve.subcurve(&second[0]),
        ))
    }

    pub fn normalize_at(&self, node: &str) -> Result<Normalization, CurveError> {
        let mut curve = self.clone();
        let rec = curve.remove_node(node)?;
        Ok(Normalization {
            curve,
            freed: (rec.branch_a, rec.branch_b),
        })
    }

    pub fn subcurve_complement(&self, y: &BTreeSet<String>) -> Result<Complement, CurveError> {
        if y.is_empty() {
            return Err(CurveError::EmptySubcurve);
        }
        if let Some(bad) = y.iter().find(|c| !self.components.contains_key(*c)) {
            return Err(CurveError::UnknownComponent(bad.clone()));
        }
        if y.len() == self.components.len() {
            return Err(CurveError::FullSubcurve);
        }
        let components = self
            .components
            .keys()
            .filter(|c| !y.contains(*c))
            .cloned()
            .collect();
        let intersection = self
            .nodes
            .values()
            .filter(|n| y.contains(&n.branch_a.component) != y.contains(&n.branch_b.component))
            .map(|n| n.id.clone())
            .collect();
        Ok(Complement {
            components,
            intersection,
        })
    }

    /// Repeatedly contracts smooth rational components meeting the rest of the
    /// curve in one or two points.
    pub fn stable_contraction(&self) -> CurveGraph {
        let mut curve = self.clone();
        loop {
            let candidate = curve.components.values().find_map(|c| {
                if c.genus != 0 || curve.components.len() == 1 {
                    return None;
                }
                let branches = curve.branch_points(&c.id);
                let has_self = branches
                    .iter()
                    .any(|p| curve.node_at(p).map(NodeRecord::is_self_node).unwrap_or(false));
                if has_self || branches.is_empty() || branches.len() > 2 {
                    return None;
                }
                Some((c.id.clone(), branches.iter().map(|s| s.to_string()).collect::<Vec<_>>()))
            });
            let Some((comp, branches)) = candidate else { break };
            let mut outer = Vec::new();
            let mut ids = Vec::new();
            for p in &branches {
                let node = curve.node_at(p).unwrap().clone();
                outer.push(node.opposite(p).unwrap().clone());
                ids.push(node.id.clone());
                curve.remove_node(&node.id).unwrap();
            }
            curve.remove_component(&comp);
            if outer.len() == 2 {
                curve
                    .add_node(ids[0].clone(), outer[0].clone(), outer[1].clone())
                    .unwrap();
            }
        }
        curve
    }

    /// Genus-labelled components and node incidences, ignoring point and node names.
    pub fn incidence_shape(&self) -> (BTreeMap<String, u32>, Vec<(String, String)>) {
        let comps = self.components.values().map(|c| (c.id.clone(), c.genus)).collect();
        let mut edges: Vec<_> = self
            .nodes
            .values()
            .map(|n| {
                let (a, b) = (n.branch_a.component.clone(), n.branch_b.component.clone());
                if a <= b { (a, b) } else { (b, a) }
            })
            .collect();
        edges.sort();
        (comps, edges)
    }

    /// Whether both curves contract to the same decorated dual graph.
    pub fn stably_equivalent(&self, other: &CurveGraph) -> bool {
        self.stable_contraction().incidence_shape() == other.stable_contraction().incidence_shape()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two(g1: u32, g2: u32, nodes: usize) -> CurveGraph {
        let mut c = CurveGraph::new();
        c.add_component("C1", g1).unwrap();
        c.add_component("C2", g2).unwrap();
        for j in 0..nodes {
            c.add_node(
                format!("n{j}"),
                PointRef::new("C1", format!("a{j}")),
                PointRef::new("C2", format!("b{j}")),
            )
            .unwrap();
        }
        c
    }

    fn chain() -> CurveGraph {
        let mut c = CurveGraph::new();
        for id in ["A", "B", "C"] {
            c.add_component(id, 0).unwrap();
        }
        c.add_node("ab", PointRef::new("A", "a1"), PointRef::new("B", "b1")).unwrap();
        c.add_node("bc", PointRef::new("B", "b2"), PointRef::new("C", "c1")).unwrap();
        c
    }

    #[test]
    fn genus_examples() {
        assert_eq!(two(1, 1, 1).genus().unwrap(), 2);
        let mut smooth = CurveGraph::new();
        smooth.add_component("C", 3).unwrap();
        assert_eq!(smooth.genus().unwrap(), 3);
        assert_eq!(two(0, 0, 3).genus().unwrap(), 2);
    }

    #[test]
    fn genus_of_disconnected_curve_is_an_error() {
        let mut c = CurveGraph::new();
        c.add_component("A", 1).unwrap();
        c.add_component("B", 1).unwrap();
        assert_eq!(c.genus(), Err(CurveError::Disconnected));
    }

    #[test]
    fn stability_examples() {
        assert!(two(2, 2, 1).is_stable().unwrap());
        assert!(!two(0, 2, 1).is_stable().unwrap());
        assert!(two(0, 2, 3).is_stable().unwrap());
        assert_eq!(two(0, 1, 1).is_stable(), Err(CurveError::GenusTooSmall));
    }

    #[test]
    fn rational_chain_examples() {
        let mut single = CurveGraph::new();
        single.add_component("P", 0).unwrap();
        assert!(single.is_rational_chain());
        assert!(!two(0, 0, 2).is_rational_chain());
        assert!(chain().is_rational_chain());
    }

    #[test]
    fn separating_nodes_examples() {
        assert_eq!(two(1, 1, 1).separating_nodes(), BTreeSet::from(["n0".to_string()]));
        assert!(two(1, 1, 2).separating_nodes().is_empty());
        assert_eq!(chain().separating_nodes().len(), 2);
    }

    #[test]
    fn tails_carry_a_free_point() {
        let (y, yc) = two(2, 3, 1).tails("n0").unwrap();
        assert_eq!(y.component_ids(), BTreeSet::from(["C1".to_string()]));
        assert_eq!(yc.component_ids(), BTreeSet::from(["C2".to_string()]));
        assert!(y.is_free_point("a0"));
        assert!(yc.is_free_point("b0"));
        assert_eq!(two(1, 1, 2).tails("n0"), Err(CurveError::NotSeparating("n0".into())));
    }

    #[test]
    fn normalization_examples() {
        let banana = two(0, 0, 2);
        let n = banana.normalize_at("n0").unwrap();
        assert!(n.curve.is_connected());
        assert_eq!(n.curve.genus().unwrap(), 0);

        let n = two(2, 2, 1).normalize_at("n0").unwrap();
        assert_eq!(n.curve.connected_parts().len(), 2);

        let mut selfnode = CurveGraph::new();
        selfnode.add_component("E", 1).unwrap();
        selfnode.add_node("s", PointRef::new("E", "x"), PointRef::new("E", "y")).unwrap();
        assert_eq!(selfnode.genus().unwrap(), 2);
        let n = selfnode.normalize_at("s").unwrap();
        assert_eq!(n.curve.genus().unwrap(), 1);
        assert!(n.curve.is_free_point("x") && n.curve.is_free_point("y"));
        assert_eq!(selfnode.normalize_at("zz"), Err(CurveError::UnknownNode("zz".into())));
    }

    #[test]
    fn complement_examples() {
        let theta = two(0, 0, 3);
        let y = BTreeSet::from(["C1".to_string()]);
        let comp = theta.subcurve_complement(&y).unwrap();
        assert_eq!(comp.components, BTreeSet::from(["C2".to_string()]));
        assert_eq!(comp.intersection.len(), 3);

        let comp = chain().subcurve_complement(&BTreeSet::from(["A".to_string()])).unwrap();
        assert_eq!(comp.components.len(), 2);
        assert_eq!(comp.intersection, BTreeSet::from(["ab".to_string()]));

        assert_eq!(theta.subcurve_complement(&BTreeSet::new()), Err(CurveError::EmptySubcurve));
        let all = theta.component_ids();
        assert_eq!(theta.subcurve_complement(&all), Err(CurveError::FullSubcurve));
    }

    #[test]
    fn node_validation() {
        let mut c = two(1, 1, 1);
        assert!(matches!(
            c.add_node("m", PointRef::new("C1", "a0"), PointRef::new("C2", "z")),
            Err(CurveError::PointInUse(..))
        ));
        assert!(matches!(
            c.add_node("m", PointRef::new("C2", "a0"), PointRef::new("C2", "z")),
            Err(CurveError::PointInUse(..))
        ));
        assert!(matches!(
            c.add_node("m", PointRef::new("C1", "q"), PointRef::new("C1", "q")),
            Err(CurveError::SameBranch(_))
        ));
    }

    #[test]
    fn contraction_removes_rational_bridges_and_tails() {
        let mut c = two(2, 3, 0);
        c.add_component("L", 0).unwrap();
        c.add_component("T", 0).unwrap();
        c.add_node("x", PointRef::new("C1", "p"), PointRef::new("L", "l1")).unwrap();
        c.add_node("y", PointRef::new("L", "l2"), PointRef::new("C2", "q")).unwrap();
        c.add_node("z", PointRef::new("L", "l3"), PointRef::new("T", "t")).unwrap();
        assert!(c.stably_equivalent(&two(2, 3, 1)));
        assert!(!c.stably_equivalent(&two(2, 3, 2)));
    }
}

//! Finite maps from nodal curves onto genus-0 nodal targets.
//!
//! A [`CoverMap`] stores, for every source component, the target component it
//! maps onto, its degree, the fibers the caller declared, and a count of
//! residual simple branch points in general position. Target points without a
//! declared fiber have an implicit unramified fiber whose points get the
//! deterministic ids produced by [`implicit_point_id`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::curve_graph::{CurveError, CurveGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("target must be a tree of rational components")]
    TargetNotRationalTree,
    #[error("source component `{0}` has no map datum")]
    Unmapped(String),
    #[error("map datum for unknown source component `{0}`")]
    UnknownSource(String),
    #[error("source component `{0}` mapped twice")]
    MappedTwice(String),
    #[error("`{source_comp}` maps to unknown target component `{target}`")]
    UnknownTarget { source_comp: String, target: String },
    #[error("`{source_comp}` declares a fiber over `{point}`, which is not a point of `{target}`")]
    ForeignTargetPoint {
        source_comp: String,
        point: String,
        target: String,
    },
    #[error("fiber point `{point}` of `{source_comp}` lives on component `{owner}`")]
    ForeignSourcePoint {
        source_comp: String,
        point: String,
        owner: String,
    },
    #[error("fiber point `{point}` of `{source_comp}` appears more than once")]
    RepeatedFiberPoint { source_comp: String, point: String },
    #[error("`{0}` has degree zero")]
    ZeroDegree(String),
    #[error("no explicit fiber of `{source_comp}` over `{point}`")]
    UnknownFiber { source_comp: String, point: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberPoint {
    pub point: String,
    pub index: u32,
}

impl FiberPoint {
    pub fn new(point: impl Into<String>, index: u32) -> Self {
        FiberPoint {
            point: point.into(),
            index,
        }
    }
}

/// Id of the `ordinal`-th point of the implicit unramified fiber of `source`
/// over `target_point`.
pub fn implicit_point_id(source: &str, target_point: &str, ordinal: u32) -> String {
    format!("{source}@{target_point}#{ordinal}")
}

pub fn branch_budget(genus: u32, degree: u32) -> u32 {
    2 * genus + 2 * degree - 2
}

/// Map datum of one source component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentMapDatum {
    pub source: String,
    pub target: String,
    pub degree: u32,
    pub fibers: BTreeMap<String, Vec<FiberPoint>>,
    /// Simple branch points in general position that are not individually placed.
    pub residual_simple: u32,
    /// Whether all branching of this component is declared.
    pub complete: bool,
}

fn fiber_multiplicity(fiber: &[FiberPoint]) -> u32 {
    fiber.iter().map(|p| p.index.saturating_sub(1)).sum()
}

impl ComponentMapDatum {
    pub fn new(source: impl Into<String>, target: impl Into<String>, degree: u32) -> Self {
        ComponentMapDatum {
            source: source.into(),
            target: target.into(),
            degree,
            fibers: BTreeMap::new(),
            residual_simple: 0,
            complete: true,
        }
    }

    pub fn with_fiber(mut self, target_point: impl Into<String>, fiber: Vec<FiberPoint>) -> Self {
        self.fibers.insert(target_point.into(), fiber);
        self
    }

    pub fn with_residual(mut self, residual: u32) -> Self {
        self.residual_simple = residual;
        self
    }

    /// Declared fiber, or the implicit unramified one.
    pub fn fiber(&self, target_point: &str) -> Vec<FiberPoint> {
        match self.fibers.get(target_point) {
            Some(f) => f.clone(),
            None => (0..self.degree)
                .map(|i| FiberPoint::new(implicit_point_id(&self.source, target_point, i), 1))
                .collect(),
        }
    }

    pub fn fiber_sum_check(&self) -> bool {
        self.fibers
            .values()
            .all(|f| f.iter().all(|p| p.index >= 1) && f.iter().map(|p| p.index).sum::<u32>() == self.degree)
    }

    pub fn multiplicity(&self, target_point: &str) -> Result<u32, CoverError> {
        self.fibers
            .get(target_point)
            .map(|f| fiber_multiplicity(f))
            .ok_or_else(|| CoverError::UnknownFiber {
                source_comp: self.source.clone(),
                point: target_point.to_string(),
            })
    }

    /// Branch multiplicity declared over all target points plus residual simple points.
    pub fn declared_branching(&self) -> u32 {
        self.fibers.values().map(|f| fiber_multiplicity(f)).sum::<u32>() + self.residual_simple
    }

    /// Riemann–Hurwitz feasibility: equality when complete, inequality otherwise.
    pub fn riemann_hurwitz_feasible(&self, genus: u32) -> bool {
        let budget = branch_budget(genus, self.degree);
        if self.complete {
            self.declared_branching() == budget
        } else {
            self.declared_branching() <= budget
        }
    }
}

/// Genus-0 nodal target, a tree of rational components with marked points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetTree {
    curve: CurveGraph,
}

impl TargetTree {
    pub fn new(curve: CurveGraph) -> Result<Self, CoverError> {
        if !curve.is_rational_chain() {
            return Err(CoverError::TargetNotRationalTree);
        }
        Ok(TargetTree { curve })
    }

    /// A single rational component carrying the given marked points.
    pub fn line<I, S>(id: &str, points: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut curve = CurveGraph::new();
        curve.add_component(id, 0).unwrap();
        for p in points {
            curve.add_point(id, p).unwrap();
        }
        TargetTree { curve }
    }

    pub fn curve(&self) -> &CurveGraph {
        &self.curve
    }

    pub fn into_curve(self) -> CurveGraph {
        self.curve
    }

    pub fn is_node_point(&self, point: &str) -> bool {
        self.curve.node_at(point).is_some()
    }

    /// Free marked points of a target component (its declared smooth points).
    pub fn smooth_points(&self, component: &str) -> Vec<String> {
        self.curve
            .component(component)
            .map(|c| {
                c.points
                    .iter()
                    .filter(|p| self.curve.is_free_point(p))
                    .cloned()
                    .collect()
            })
            .unwrap_or_default()
    }

    /// The node point on `from` lying on the tree path towards `to`.
    pub fn point_towards(&self, from: &str, to: &str) -> Option<String> {
        if from == to {
            return None;
        }
        // BFS from `to`; the first node hit leaving `from` on the parent chain.
        let mut parent: BTreeMap<String, (String, String)> = BTreeMap::new();
        let mut queue = std::collections::VecDeque::from([to.to_string()]);
        let mut seen = BTreeSet::from([to.to_string()]);
        while let Some(v) = queue.pop_front() {
            for n in self.curve.nodes() {
                let (a, b) = (&n.branch_a, &n.branch_b);
                for (here, there) in [(a, b), (b, a)] {
                    if here.component == v && seen.insert(there.component.clone()) {
                        parent.insert(there.component.clone(), (v.clone(), there.point.clone()));
                        queue.push_back(there.component.clone());
                    }
                }
            }
        }
        parent.get(from).map(|(_, p)| p.clone())
    }
}

/// A violation of one of the cover conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A source node branch that does not lie over a target node branch.
    NodeOverSmoothPoint { node: String },
    /// The two branches of a source node lie over different target nodes.
    NodeBranchesSplit { node: String },
    /// A point over a target node that is not a source node.
    SmoothPointOverNode { target_point: String, point: String },
    /// Ramification indices differ on the two branches of a source node.
    IndexMismatch { node: String, a: u32, b: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NodeOverSmoothPoint { node } => {
                write!(f, "condition (1): node {node} lies over a smooth point")
            }
            Violation::NodeBranchesSplit { node } => {
                write!(f, "condition (1): branches of {node} lie over different target nodes")
            }
            Violation::SmoothPointOverNode { target_point, point } => {
                write!(f, "condition (1): smooth point {point} lies over target node branch {target_point}")
            }
            Violation::IndexMismatch { node, a, b } => {
                write!(f, "condition (3): node {node} has branch indices ({a},{b})")
            }
        }
    }
}

/// A finite map from a nodal curve to a genus-0 target tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverMap {
    pub source: CurveGraph,
    pub target: TargetTree,
    pub parts: BTreeMap<String, ComponentMapDatum>,
}

impl CoverMap {
    /// Builds a cover after checking the structural invariants (every source
    /// component mapped once, fibers over existing target points, fiber points
    /// owned by their component).
    pub fn new(
        source: CurveGraph,
        target: TargetTree,
        parts: impl IntoIterator<Item = ComponentMapDatum>,
    ) -> Result<Self, CoverError> {
        let mut map = BTreeMap::new();
        for d in parts {
            if source.component(&d.source).is_none() {
                return Err(CoverError::UnknownSource(d.source));
            }
            if map.contains_key(&d.source) {
                return Err(CoverError::MappedTwice(d.source));
            }
            map.insert(d.source.clone(), d);
        }
        let cm = CoverMap {
            source,
            target,
            parts: map,
        };
        cm.check_structure()?;
        Ok(cm)
    }

    fn check_structure(&self) -> Result<(), CoverError> {
        for c in self.source.components() {
            if !self.parts.contains_key(&c.id) {
                return Err(CoverError::Unmapped(c.id.clone()));
            }
        }
        for d in self.parts.values() {
            if d.degree == 0 {
                return Err(CoverError::ZeroDegree(d.source.clone()));
            }
            let tcomp = self.target.curve().component(&d.target).ok_or_else(|| CoverError::UnknownTarget {
                source_comp: d.source.clone(),
                target: d.target.clone(),
            })?;
            let mut seen = BTreeSet::new();
            for (q, fiber) in &d.fibers {
                if !tcomp.points.contains(q) {
                    return Err(CoverError::ForeignTargetPoint {
                        source_comp: d.source.clone(),
                        point: q.clone(),
                        target: d.target.clone(),
                    });
                }
                for p in fiber {
                    if let Some(owner) = self.source.owner_of(&p.point) {
                        if owner != d.source {
                            return Err(CoverError::ForeignSourcePoint {
                                source_comp: d.source.clone(),
                                point: p.point.clone(),
                                owner: owner.to_string(),
                            });
                        }
                    }
                    if !seen.insert(p.point.clone()) {
                        return Err(CoverError::RepeatedFiberPoint {
                            source_comp: d.source.clone(),
                            point: p.point.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn restrict(&self, component: &str) -> Result<&ComponentMapDatum, CoverError> {
        self.parts
            .get(component)
            .ok_or_else(|| CoverError::UnknownSource(component.to_string()))
    }

    /// Where a source point sits: the target point below it and its index.
    pub fn locate(&self, component: &str, point: &str) -> Option<(String, u32)> {
        let d = self.parts.get(component)?;
        for (q, fiber) in &d.fibers {
            if let Some(p) = fiber.iter().find(|p| p.point == point) {
                return Some((q.clone(), p.index));
            }
        }
        let tcomp = self.target.curve().component(&d.target)?;
        tcomp
            .points
            .iter()
            .filter(|q| !d.fibers.contains_key(*q))
            .find(|q| (0..d.degree).any(|i| implicit_point_id(&d.source, q, i) == point))
            .map(|q| (q.clone(), 1))
    }

    /// Source components mapping onto a target component.
    pub fn over(&self, target_component: &str) -> impl Iterator<Item = &ComponentMapDatum> {
        let t = target_component.to_string();
        self.parts.values().filter(move |d| d.target == t)
    }

    /// Full fiber over a target point: (source component, point) pairs.
    pub fn fiber_over(&self, target_point: &str) -> Vec<(String, FiberPoint)> {
        let Some(tc) = self.target.curve().owner_of(target_point) else {
            return Vec::new();
        };
        self.over(tc)
            .flat_map(|d| d.fiber(target_point).into_iter().map(move |p| (d.source.clone(), p)))
            .collect()
    }

    /// d(q) summed over all source components above the component of `q`.
    pub fn point_multiplicity(&self, target_point: &str) -> u32 {
        self.fiber_over(target_point)
            .iter()
            .map(|(_, p)| p.index - 1)
            .sum()
    }

    /// Degree over each target component.
    pub fn degrees_over_components(&self) -> BTreeMap<String, u32> {
        let mut out: BTreeMap<String, u32> =
            self.target.curve().component_ids().into_iter().map(|c| (c, 0)).collect();
        for d in self.parts.values() {
            *out.get_mut(&d.target).unwrap() += d.degree;
        }
        out
    }

    /// The common degree over every target component, if balanced.
    pub fn degree(&self) -> Option<u32> {
        let degs: BTreeSet<u32> = self.degrees_over_components().into_values().collect();
        match degs.len() {
            1 => degs.into_iter().next().filter(|k| *k > 0),
            _ => None,
        }
    }

    pub fn fiber_sums_ok(&self) -> bool {
        self.parts.values().all(ComponentMapDatum::fiber_sum_check)
    }

    /// Conditions (1) and (3); an empty list means both hold.
    pub fn check_condition_1_and_3(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let tgt = self.target.curve();
        for n in self.source.nodes() {
            let a = self.locate(&n.branch_a.component, &n.branch_a.point);
            let b = self.locate(&n.branch_b.component, &n.branch_b.point);
            let (Some((ta, ea)), Some((tb, eb))) = (a, b) else {
                out.push(Violation::NodeOverSmoothPoint { node: n.id.clone() });
                continue;
            };
            match tgt.node_at(&ta) {
                None => out.push(Violation::NodeOverSmoothPoint { node: n.id.clone() }),
                Some(tn) if tn.opposite(&ta).map(|p| p.point != tb).unwrap_or(true) => {
                    out.push(Violation::NodeBranchesSplit { node: n.id.clone() })
                }
                Some(_) => {
                    if ea != eb {
                        out.push(Violation::IndexMismatch {
                            node: n.id.clone(),
                            a: ea,
                            b: eb,
                        });
                    }
                }
            }
        }
        for tn in tgt.nodes() {
            for s in [&tn.branch_a, &tn.branch_b] {
                for d in self.over(&s.component) {
                    for p in d.fiber(&s.point) {
                        if self.source.node_at(&p.point).is_none() {
                            out.push(Violation::SmoothPointOverNode {
                                target_point: s.point.clone(),
                                point: p.point.clone(),
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Left-hand side of the stability inequality for a target subcurve.
    pub fn marker_count(&self, z: &BTreeSet<String>) -> u32 {
        let tgt = self.target.curve();
        let boundary = tgt
            .nodes()
            .filter(|n| z.contains(&n.branch_a.component) != z.contains(&n.branch_b.component))
            .count() as u32;
        let smooth: u32 = z
            .iter()
            .flat_map(|c| self.target.smooth_points(c))
            .map(|q| self.point_multiplicity(&q))
            .sum();
        let residual: u32 = self
            .parts
            .values()
            .filter(|d| z.contains(&d.target))
            .map(|d| d.residual_simple)
            .sum();
        boundary + smooth + residual
    }

    pub fn violates_condition2(&self, z: &BTreeSet<String>) -> bool {
        self.marker_count(z) < 3
    }

    /// Irreducible target components violating condition (2). By the
    /// reduction to irreducible components this decides condition (2) for
    /// every subcurve.
    pub fn condition2_violations(&self) -> Vec<String> {
        self.target
            .curve()
            .component_ids()
            .into_iter()
            .filter(|c| self.violates_condition2(&BTreeSet::from([c.clone()])))
            .collect()
    }

    pub fn check_condition4(&self) -> bool {
        self.target
            .curve()
            .component_ids()
            .iter()
            .flat_map(|c| self.target.smooth_points(c))
            .all(|q| self.point_multiplicity(&q) <= 1)
    }

    pub fn riemann_hurwitz_feasible(&self) -> bool {
        self.parts.values().all(|d| {
            let g = self.source.component(&d.source).map(|c| c.genus).unwrap_or(0);
            d.riemann_hurwitz_feasible(g)
        })
    }

    /// Every node branch of every source component appears in some fiber.
    pub fn node_branches_placed(&self) -> bool {
        self.source.nodes().all(|n| {
            [&n.branch_a, &n.branch_b]
                .iter()
                .all(|p| self.locate(&p.component, &p.point).is_some())
        })
    }

    pub fn is_quasi_admissible(&self) -> bool {
        self.source.is_connected()
            && self.fiber_sums_ok()
            && self.degree().is_some()
            && self.node_branches_placed()
            && self.check_condition_1_and_3().is_empty()
            && self.condition2_violations().is_empty()
            && self.riemann_hurwitz_feasible()
    }

    pub fn is_admissible(&self) -> bool {
        self.is_quasi_admissible() && self.check_condition4()
    }

    /// b(π): total branch multiplicity over smooth target points.
    pub fn branch_count(&self) -> u32 {
        let tgt = self.target.curve();
        let smooth: u32 = tgt
            .component_ids()
            .iter()
            .flat_map(|c| self.target.smooth_points(c))
            .map(|q| self.point_multiplicity(&q))
            .sum();
        smooth + self.parts.values().map(|d| d.residual_simple).sum::<u32>()
    }

    /// Global Riemann–Hurwitz count b(π) = 2g + 2k − 2.
    pub fn global_riemann_hurwitz(&self) -> bool {
        match (self.source.genus(), self.degree()) {
            (Ok(g), Some(k)) => self.branch_count() == branch_budget(g, k),
            _ => false,
        }
    }
}

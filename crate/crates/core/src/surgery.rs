//! Constructions producing new covers from old ones.
//!
//! * [`to_admissible`] trades every smooth branch point of multiplicity `d`
//!   for `d` simple branch points on newly attached rational components.
//! * [`glue_covers`] glues `r` quasi admissible covers along a new rational
//!   target component, with connector components over it, and falls back to
//!   contracting that component when it would carry no markers.
//! * [`glue_node_on_cover`] re-inserts one node into a cover of the
//!   normalization, keeping the degree (matched) or raising it by one
//!   (unmatched).
//! * [`assemble_two_component`] chains the three to build a cover of a
//!   two-component curve from one map per component.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::cover::{implicit_point_id, ComponentMapDatum, CoverError, CoverMap, FiberPoint, TargetTree};
use crate::curve_graph::{CurveError, CurveGraph, PointRef};
use crate::gonality::MapBehavior;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("input cover is not quasi admissible")]
    NotQuasiAdmissible,
    #[error("input cover is not admissible")]
    NotAdmissible,
    #[error("designated point `{0}` is not a smooth point of the piece's target")]
    DesignatedNotSmooth(String),
    #[error("node branch `{0}` is not in the designated fiber")]
    BranchNotConjugated(String),
    #[error("gluing needs at least two pieces")]
    TooFewPieces,
    #[error("node `{0}` joins a piece to itself")]
    SelfGluing(String),
    #[error("node `{node}` refers to unknown branch `{point}`")]
    UnknownBranch { node: String, point: String },
    #[error("branch `{0}` is used by more than one node")]
    BranchReused(String),
    #[error("branch `{0}` is not used by any node")]
    BranchUnused(String),
    #[error("node `{node}`: supplied e_n = {supplied}, minimum of branch indices is {expected}")]
    EnMismatch { node: String, supplied: u32, expected: u32 },
    #[error("piece {0} is rational of degree at most 2 outside the two-node degree-2 configuration")]
    RationalLowDegree(usize),
    #[error("pieces share the identifier `{0}`")]
    Overlap(String),
    #[error("degree identity failed: built {built}, expected {expected}")]
    DegreeIdentity { built: u32, expected: u32 },
    #[error("expansion would destabilize target component `{0}`")]
    ExpansionUnstable(String),
    #[error("both branches of `{0}` lie over the designated points")]
    BothMatched(String),
    #[error("node `{0}` does not fit the requested gluing mode")]
    ModeMismatch(String),
    #[error("source components of node `{0}` map to the same target component")]
    SameTargetComponent(String),
    #[error("tail at `{0}` does not cover the required target component")]
    TailDoesNotCover(String),
    #[error("construction produced a non-admissible cover at `{0}`")]
    Construction(String),
    #[error("no node has both branches in the designated classes")]
    EmptyCore,
    #[error("curve must have exactly two components without self-nodes")]
    NotTwoComponent,
    #[error("behavior does not fit component `{0}`")]
    BehaviorMismatch(String),
}

/// One quasi admissible cover with a designated fiber holding node branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluePiece {
    pub cover: CoverMap,
    pub designated: String,
    /// The full fiber over the designated point: (source component, point).
    pub fiber: Vec<(String, FiberPoint)>,
    pub branches: BTreeSet<String>,
}

impl GluePiece {
    pub fn new<S: AsRef<str>>(cover: CoverMap, designated: &str, branches: &[S]) -> Result<Self, SurgeryError> {
        if cover.target.curve().owner_of(designated).is_none() || cover.target.is_node_point(designated) {
            return Err(SurgeryError::DesignatedNotSmooth(designated.to_string()));
        }
        let fiber = cover.fiber_over(designated);
        let branches: BTreeSet<String> = branches.iter().map(|s| s.as_ref().to_string()).collect();
        for b in &branches {
            if !fiber.iter().any(|(_, p)| &p.point == b) {
                return Err(SurgeryError::BranchNotConjugated(b.clone()));
            }
        }
        Ok(GluePiece {
            cover,
            designated: designated.to_string(),
            fiber,
            branches,
        })
    }

    pub fn degree(&self) -> u32 {
        self.cover.degree().unwrap_or(0)
    }

    fn entry(&self, point: &str) -> Option<&(String, FiberPoint)> {
        self.fiber.iter().find(|(_, p)| p.point == point)
    }

    pub fn anonymous(&self) -> impl Iterator<Item = &(String, FiberPoint)> {
        self.fiber.iter().filter(|(_, p)| !self.branches.contains(&p.point))
    }

    fn designated_component(&self) -> &str {
        self.cover.target.curve().owner_of(&self.designated).unwrap()
    }

    /// The extra hypotheses under which the glued map is quasi admissible.
    pub fn meets_gluing_hypotheses(&self) -> bool {
        let genus = self.cover.source.genus().unwrap_or(0);
        let z = self.designated_component().to_string();
        let tgt = self.cover.target.curve();
        let meets = tgt
            .nodes()
            .filter(|n| n.branch_a.component == z || n.branch_b.component == z)
            .count();
        let branching: u32 = self
            .cover
            .target
            .smooth_points(&z)
            .iter()
            .map(|q| self.cover.point_multiplicity(q))
            .sum::<u32>()
            + self.cover.over(&z).map(|d| d.residual_simple).sum::<u32>();
        (genus != 0 || self.degree() >= 3) && (meets >= 2 || branching >= 2)
    }
}

/// A node joining branches of two different pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeIncidence {
    pub node: String,
    pub a: (usize, String),
    pub b: (usize, String),
    pub e_n: u32,
}

impl NodeIncidence {
    /// Incidence with e_n computed from the pieces.
    pub fn minimal(pieces: &[GluePiece], node: &str, a: (usize, &str), b: (usize, &str)) -> Option<Self> {
        let ea = pieces.get(a.0)?.entry(a.1)?.1.index;
        let eb = pieces.get(b.0)?.entry(b.1)?.1.index;
        Some(NodeIncidence {
            node: node.to_string(),
            a: (a.0, a.1.to_string()),
            b: (b.0, b.1.to_string()),
            e_n: ea.min(eb),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueOutcome {
    pub cover: CoverMap,
    pub degree: u32,
    /// The linking target component carried no markers and was contracted.
    pub contracted: bool,
    pub hypotheses_hold: bool,
    pub quasi_admissible: bool,
}

/// Mutable assembly area for covers.
struct Builder {
    source: CurveGraph,
    target: CurveGraph,
    parts: BTreeMap<String, ComponentMapDatum>,
}

impl Builder {
    fn from_cover(cm: &CoverMap) -> Self {
        Builder {
            source: cm.source.clone(),
            target: cm.target.curve().clone(),
            parts: cm.parts.clone(),
        }
    }

    fn empty() -> Self {
        Builder {
            source: CurveGraph::new(),
            target: CurveGraph::new(),
            parts: BTreeMap::new(),
        }
    }

    fn absorb(&mut self, cm: &CoverMap) -> Result<(), SurgeryError> {
        merge_curve(&mut self.source, &cm.source)?;
        merge_curve(&mut self.target, cm.target.curve())?;
        for (k, d) in &cm.parts {
            if self.parts.insert(k.clone(), d.clone()).is_some() {
                return Err(SurgeryError::Overlap(k.clone()));
            }
        }
        Ok(())
    }

    fn add_source(&mut self, datum: ComponentMapDatum) -> Result<(), SurgeryError> {
        self.source.add_component(datum.source.clone(), 0)?;
        self.parts.insert(datum.source.clone(), datum);
        Ok(())
    }

    fn join(&mut self, id: String, a: PointRef, b: PointRef) -> Result<(), SurgeryError> {
        self.source.add_node(id, a, b)?;
        Ok(())
    }

    fn finish(self) -> Result<CoverMap, SurgeryError> {
        Ok(CoverMap::new(
            self.source,
            TargetTree::new(self.target)?,
            self.parts.into_values(),
        )?)
    }

    /// Attaches an isomorphic copy of the target tree `tree` (component ids of
    /// the current target) at source point `at` on `host`. The copy meets
    /// `host` at its point over `over`.
    fn attach_copy(
        &mut self,
        tree: &BTreeSet<String>,
        host: &str,
        at: &str,
        over: &str,
    ) -> Result<(), SurgeryError> {
        let copy_id = |z: &str| format!("{at}~{z}");
        for z in tree {
            self.add_source(ComponentMapDatum::new(copy_id(z), z.clone(), 1))?;
        }
        let tnodes: Vec<_> = self
            .target
            .nodes()
            .filter(|n| tree.contains(&n.branch_a.component) && tree.contains(&n.branch_b.component))
            .cloned()
            .collect();
        for n in tnodes {
            let (ca, cb) = (copy_id(&n.branch_a.component), copy_id(&n.branch_b.component));
            let pa = implicit_point_id(&ca, &n.branch_a.point, 0);
            let pb = implicit_point_id(&cb, &n.branch_b.point, 0);
            self.join(format!("{at}~{}", n.id), PointRef::new(ca, pa), PointRef::new(cb, pb))?;
        }
        let z = self.target.owner_of(over).unwrap().to_string();
        let cz = copy_id(&z);
        let p = implicit_point_id(&cz, over, 0);
        self.join(format!("{at}~att"), PointRef::new(host, at), PointRef::new(cz, p))
    }
}

fn merge_curve(into: &mut CurveGraph, from: &CurveGraph) -> Result<(), SurgeryError> {
    for c in from.components() {
        into.add_component(c.id.clone(), c.genus)
            .map_err(|_| SurgeryError::Overlap(c.id.clone()))?;
        for p in &c.points {
            if into.owner_of(p).is_some() {
                return Err(SurgeryError::Overlap(p.clone()));
            }
            into.add_point(&c.id, p.clone())?;
        }
    }
    for n in from.nodes() {
        into.add_node(n.id.clone(), n.branch_a.clone(), n.branch_b.clone())
            .map_err(|_| SurgeryError::Overlap(n.id.clone()))?;
    }
    Ok(())
}

/// Glues quasi admissible covers of the pieces of a curve into one finite map
/// of degree Σ k_i − Σ e_n satisfying conditions (1) and (3).
pub fn glue_covers(pieces: &[GluePiece], incidences: &[NodeIncidence]) -> Result<GlueOutcome, SurgeryError> {
    if pieces.len() < 2 {
        return Err(SurgeryError::TooFewPieces);
    }
    let mut used: BTreeSet<(usize, String)> = BTreeSet::new();
    let mut ends = Vec::with_capacity(incidences.len());
    for inc in incidences {
        if inc.a.0 == inc.b.0 {
            return Err(SurgeryError::SelfGluing(inc.node.clone()));
        }
        let mut idx = [0u32; 2];
        let mut comps = [String::new(), String::new()];
        for (s, (piece, point)) in [&inc.a, &inc.b].into_iter().enumerate() {
            let unknown = || SurgeryError::UnknownBranch {
                node: inc.node.clone(),
                point: point.clone(),
            };
            let pc = pieces.get(*piece).ok_or_else(unknown)?;
            if !pc.branches.contains(point) {
                return Err(unknown());
            }
            let (comp, fp) = pc.entry(point).ok_or_else(unknown)?;
            if !used.insert((*piece, point.clone())) {
                return Err(SurgeryError::BranchReused(point.clone()));
            }
            idx[s] = fp.index;
            comps[s] = comp.clone();
        }
        let expected = idx[0].min(idx[1]);
        if inc.e_n != expected {
            return Err(SurgeryError::EnMismatch {
                node: inc.node.clone(),
                supplied: inc.e_n,
                expected,
            });
        }
        ends.push((comps, idx));
    }
    for (i, pc) in pieces.iter().enumerate() {
        if let Some(b) = pc.branches.iter().find(|b| !used.contains(&(i, (*b).clone()))) {
            return Err(SurgeryError::BranchUnused(b.clone()));
        }
        let genus = pc.cover.source.genus().unwrap_or(0);
        if genus == 0 && pc.degree() <= 2 && !(pc.degree() == 2 && pc.branches.len() == 2) {
            return Err(SurgeryError::RationalLowDegree(i));
        }
    }

    let expected: u32 = pieces.iter().map(GluePiece::degree).sum::<u32>()
        - incidences.iter().map(|i| i.e_n).sum::<u32>();
    let markers: u32 = ends.iter().map(|(_, e)| e[0].abs_diff(e[1])).sum::<u32>()
        + pieces
            .iter()
            .flat_map(|p| p.anonymous())
            .map(|(_, p)| p.index - 1)
            .sum::<u32>();
    let contracted = pieces.len() == 2 && markers == 0;

    let mut b = Builder::empty();
    for pc in pieces {
        b.absorb(&pc.cover)?;
    }
    let trees: Vec<BTreeSet<String>> = pieces.iter().map(|p| p.cover.target.curve().component_ids()).collect();

    if contracted {
        let (q1, q2) = (&pieces[0].designated, &pieces[1].designated);
        b.target.add_node(
            "glue.t",
            PointRef::new(pieces[0].designated_component(), q1.clone()),
            PointRef::new(pieces[1].designated_component(), q2.clone()),
        )?;
        for (inc, (comps, _)) in incidences.iter().zip(&ends) {
            b.join(
                inc.node.clone(),
                PointRef::new(comps[0].clone(), inc.a.1.clone()),
                PointRef::new(comps[1].clone(), inc.b.1.clone()),
            )?;
        }
        for (i, pc) in pieces.iter().enumerate() {
            let other = 1 - i;
            for (comp, m) in pc.anonymous() {
                b.attach_copy(&trees[other], comp, &m.point, &pieces[other].designated)?;
            }
        }
    } else {
        let link = "glue.B".to_string();
        b.target.add_component(link.clone(), 0)?;
        let slot = |i: usize| format!("glue.B.q{i}");
        for (i, pc) in pieces.iter().enumerate() {
            b.target.add_node(
                format!("glue.t{i}"),
                PointRef::new(pc.designated_component(), pc.designated.clone()),
                PointRef::new(link.clone(), slot(i)),
            )?;
        }
        // Points of a component over the link lying above slot t, other than
        // the listed attaching points, each receive a copy of piece t's target.
        let mut copies: Vec<(String, String, usize)> = Vec::new();
        for (inc, (comps, idx)) in incidences.iter().zip(&ends) {
            let l = format!("{}.L", inc.node);
            let deg = idx[0].max(idx[1]);
            let mut datum = ComponentMapDatum::new(l.clone(), link.clone(), deg).with_residual(idx[0].abs_diff(idx[1]));
            for (s, (piece, point)) in [&inc.a, &inc.b].into_iter().enumerate() {
                let att = format!("{l}.{}", if s == 0 { "a" } else { "b" });
                let mut fiber = vec![FiberPoint::new(att.clone(), idx[s])];
                for j in 0..deg - idx[s] {
                    let x = format!("{l}.x{piece}.{j}");
                    fiber.push(FiberPoint::new(x.clone(), 1));
                    copies.push((l.clone(), x, *piece));
                }
                datum.fibers.insert(slot(*piece), fiber);
                b.source.add_component(l.clone(), 0).ok();
                b.join(
                    format!("{}.{}", inc.node, if s == 0 { "a" } else { "b" }),
                    PointRef::new(comps[s].clone(), point.clone()),
                    PointRef::new(l.clone(), att),
                )?;
            }
            for t in (0..pieces.len()).filter(|t| *t != inc.a.0 && *t != inc.b.0) {
                for j in 0..deg {
                    copies.push((l.clone(), implicit_point_id(&l, &slot(t), j), t));
                }
            }
            b.parts.insert(l.clone(), datum);
        }
        for (i, pc) in pieces.iter().enumerate() {
            for (comp, m) in pc.anonymous() {
                let l = format!("{}.L", m.point);
                let att = format!("{l}.o");
                let datum = ComponentMapDatum::new(l.clone(), link.clone(), m.index)
                    .with_fiber(slot(i), vec![FiberPoint::new(att.clone(), m.index)])
                    .with_residual(m.index - 1);
                b.add_source(datum)?;
                b.join(format!("{}.n", m.point), PointRef::new(comp.clone(), m.point.clone()), PointRef::new(l.clone(), att))?;
                for t in (0..pieces.len()).filter(|t| *t != i) {
                    for j in 0..m.index {
                        copies.push((l.clone(), implicit_point_id(&l, &slot(t), j), t));
                    }
                }
            }
        }
        for (host, at, t) in copies {
            b.attach_copy(&trees[t], &host, &at, &pieces[t].designated)?;
        }
    }

    let cover = b.finish()?;
    let built = cover.degree().unwrap_or(0);
    if built != expected {
        return Err(SurgeryError::DegreeIdentity { built, expected });
    }
    let quasi_admissible = cover.is_quasi_admissible();
    Ok(GlueOutcome {
        degree: built,
        contracted,
        hypotheses_hold: pieces.iter().all(GluePiece::meets_gluing_hypotheses),
        quasi_admissible,
        cover,
    })
}

/// Replaces every smooth target point of multiplicity `d ≥ 2` by a new rational
/// target component carrying `d` simple branch points.
pub fn to_admissible(cm: &CoverMap) -> Result<CoverMap, SurgeryError> {
    if !cm.is_quasi_admissible() {
        return Err(SurgeryError::NotQuasiAdmissible);
    }
    let heavy: Vec<String> = cm
        .target
        .curve()
        .component_ids()
        .iter()
        .flat_map(|c| cm.target.smooth_points(c))
        .filter(|q| cm.point_multiplicity(q) >= 2)
        .collect();
    if heavy.is_empty() {
        return Ok(cm.clone());
    }
    let mut b = Builder::from_cover(cm);
    for q in &heavy {
        let z = cm.target.curve().owner_of(q).unwrap().to_string();
        let e = format!("{q}.E");
        let o = format!("{e}.o");
        b.target.add_component(e.clone(), 0)?;
        b.target.add_node(format!("{q}.t"), PointRef::new(z, q.clone()), PointRef::new(e.clone(), o.clone()))?;
        for (comp, p) in cm.fiber_over(q) {
            attach_totally_ramified(&mut b, &comp, &p, &e, &o)?;
        }
    }
    let out = b.finish()?;
    if let Some(z) = out.condition2_violations().into_iter().next() {
        return Err(SurgeryError::ExpansionUnstable(z));
    }
    Ok(out)
}

/// Attaches at `p` a rational component of degree `e_p` over `target`,
/// totally ramified at the attaching point over `over`.
fn attach_totally_ramified(b: &mut Builder, comp: &str, p: &FiberPoint, target: &str, over: &str) -> Result<(), SurgeryError> {
    let r = format!("{}.R", p.point);
    let o = format!("{r}.o");
    b.add_source(
        ComponentMapDatum::new(r.clone(), target, p.index)
            .with_fiber(over, vec![FiberPoint::new(o.clone(), p.index)])
            .with_residual(p.index - 1),
    )?;
    b.join(format!("{r}.n"), PointRef::new(comp, p.point.clone()), PointRef::new(r, o))
}

/// Glues two points lying in the same fiber over the smooth point `over`.
/// The degree is unchanged.
fn glue_same_fiber(
    b: &mut Builder,
    cm: &CoverMap,
    x: (&str, &FiberPoint),
    y: (&str, &FiberPoint),
    over: &str,
    tag: &str,
) -> Result<(), SurgeryError> {
    let z = b.target.owner_of(over).unwrap().to_string();
    let e = format!("{tag}.E");
    let o = format!("{e}.o");
    b.target.add_component(e.clone(), 0)?;
    b.target.add_node(format!("{tag}.t"), PointRef::new(z, over), PointRef::new(e.clone(), o.clone()))?;
    let l = format!("{tag}.L");
    let (lx, ly) = (format!("{l}.x"), format!("{l}.y"));
    let deg = x.1.index + y.1.index;
    b.add_source(
        ComponentMapDatum::new(l.clone(), e.clone(), deg)
            .with_fiber(o.clone(), vec![FiberPoint::new(lx.clone(), x.1.index), FiberPoint::new(ly.clone(), y.1.index)])
            .with_residual(deg),
    )?;
    b.join(format!("{tag}.x"), PointRef::new(x.0, x.1.point.clone()), PointRef::new(l.clone(), lx))?;
    b.join(format!("{tag}.y"), PointRef::new(y.0, y.1.point.clone()), PointRef::new(l, ly))?;
    for (comp, p) in fiber_over_in(b, cm, over) {
        if p.point != x.1.point && p.point != y.1.point {
            attach_totally_ramified(b, &comp, &p, &e, &o)?;
        }
    }
    Ok(())
}

/// Fiber over a target point computed on the builder's current data.
fn fiber_over_in(b: &Builder, _cm: &CoverMap, over: &str) -> Vec<(String, FiberPoint)> {
    let z = b.target.owner_of(over).unwrap();
    b.parts
        .values()
        .filter(|d| d.target == z)
        .flat_map(|d| d.fiber(over).into_iter().map(move |p| (d.source.clone(), p)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlueMode {
    /// Exactly one branch lies over its designated point; degree unchanged.
    Matched,
    /// Neither branch lies over its designated point; degree grows by one.
    Unmatched,
}

/// Source components beyond the node at `point` (the side not containing `comp`).
fn tail_beyond(source: &CurveGraph, point: &str) -> Option<BTreeSet<String>> {
    let node = source.node_at(point)?;
    let far = node.opposite(point)?.component.clone();
    let norm = source.normalize_at(&node.id).ok()?;
    norm.curve.connected_parts().into_iter().find(|p| p.contains(&far))
}

/// A smooth point on the side of a freed branch: the branch itself when it is
/// smooth, otherwise a fresh general point on the first component of its tail.
fn smooth_representative(
    b: &mut Builder,
    cm: &CoverMap,
    comp: &str,
    point: &str,
    tag: &str,
) -> Result<(String, FiberPoint, String), SurgeryError> {
    match cm.source.node_at(point) {
        None => {
            let (q, e) = cm
                .locate(comp, point)
                .ok_or_else(|| SurgeryError::Construction(point.to_string()))?;
            Ok((comp.to_string(), FiberPoint::new(point, e), q))
        }
        Some(node) => {
            let next = node.opposite(point).unwrap().component.clone();
            let z = cm.parts[&next].target.clone();
            let fresh = format!("{tag}.g");
            b.target.add_point(&z, fresh.clone())?;
            let x = implicit_point_id(&next, &fresh, 0);
            Ok((next, FiberPoint::new(x, 1), fresh))
        }
    }
}

/// Re-inserts node `node` (branches `p1` on one component and `p2` on the
/// other) into an admissible cover of the normalization at that node.
pub fn glue_node_on_cover(
    cm: &CoverMap,
    node: &str,
    p1: &PointRef,
    p2: &PointRef,
    mode: GlueMode,
) -> Result<CoverMap, SurgeryError> {
    if !cm.is_admissible() {
        return Err(SurgeryError::NotAdmissible);
    }
    let d1 = cm.restrict(&p1.component)?;
    let d2 = cm.restrict(&p2.component)?;
    if d1.target == d2.target {
        return Err(SurgeryError::SameTargetComponent(node.to_string()));
    }
    let q1 = cm.target.point_towards(&d1.target, &d2.target);
    let q2 = cm.target.point_towards(&d2.target, &d1.target);
    let unknown = |p: &PointRef| SurgeryError::UnknownBranch {
        node: node.to_string(),
        point: p.point.clone(),
    };
    let (img1, _) = cm.locate(&p1.component, &p1.point).ok_or_else(|| unknown(p1))?;
    let (img2, _) = cm.locate(&p2.component, &p2.point).ok_or_else(|| unknown(p2))?;
    let over1 = Some(&img1) == q1.as_ref();
    let over2 = Some(&img2) == q2.as_ref();

    let mut b = Builder::from_cover(cm);
    match (mode, over1, over2) {
        (_, true, true) => return Err(SurgeryError::BothMatched(node.to_string())),
        (GlueMode::Matched, true, false) | (GlueMode::Matched, false, true) => {
            let (on_q, other) = if over1 { (p1, p2) } else { (p2, p1) };
            let tail = tail_beyond(&cm.source, &on_q.point).ok_or_else(|| SurgeryError::TailDoesNotCover(on_q.point.clone()))?;
            let (xc, x, over) = smooth_representative(&mut b, cm, &other.component, &other.point, node)?;
            let z = b.target.owner_of(&over).unwrap().to_string();
            let (yc, y) = tail
                .iter()
                .filter(|c| b.parts[*c].target == z)
                .find_map(|c| {
                    let d = &b.parts[c];
                    d.fiber(&over)
                        .into_iter()
                        .find(|p| p.index == 1 && cm.source.node_at(&p.point).is_none())
                        .map(|p| (c.clone(), p))
                })
                .ok_or_else(|| SurgeryError::TailDoesNotCover(on_q.point.clone()))?;
            glue_same_fiber(&mut b, cm, (&xc, &x), (&yc, &y), &over, node)?;
        }
        (GlueMode::Unmatched, false, false) => {
            let (x1c, x1, b1) = smooth_representative(&mut b, cm, &p1.component, &p1.point, &format!("{node}.1"))?;
            let (x2c, x2, b2) = smooth_representative(&mut b, cm, &p2.component, &p2.point, &format!("{node}.2"))?;
            if b1 == b2 {
                return Err(SurgeryError::Construction(node.to_string()));
            }
            // One extra sheet: a copy of the whole target.
            let tree = b.target.component_ids();
            let copy_id = |z: &str| format!("{node}.K~{z}");
            for z in &tree {
                b.add_source(ComponentMapDatum::new(copy_id(z), z.clone(), 1))?;
            }
            let tnodes: Vec<_> = b.target.nodes().cloned().collect();
            for n in tnodes {
                let (ca, cb) = (copy_id(&n.branch_a.component), copy_id(&n.branch_b.component));
                let pa = implicit_point_id(&ca, &n.branch_a.point, 0);
                let pb = implicit_point_id(&cb, &n.branch_b.point, 0);
                b.join(format!("{node}.K~{}", n.id), PointRef::new(ca, pa), PointRef::new(cb, pb))?;
            }
            for (xc, x, over, side) in [(&x1c, &x1, &b1, 1), (&x2c, &x2, &b2, 2)] {
                let z = b.target.owner_of(over).unwrap().to_string();
                let cz = copy_id(&z);
                let star = FiberPoint::new(implicit_point_id(&cz, over, 0), 1);
                glue_same_fiber(&mut b, cm, (xc, x), (&cz, &star), over, &format!("{node}.{side}"))?;
            }
        }
        _ => return Err(SurgeryError::ModeMismatch(node.to_string())),
    }
    let out = b.finish()?;
    if !out.is_admissible() {
        return Err(SurgeryError::Construction(node.to_string()));
    }
    Ok(out)
}

/// One map per component together with the class of its designated fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeSide<'a> {
    pub component: &'a str,
    pub behavior: &'a MapBehavior,
    pub designated: usize,
}

/// Builds an admissible cover of a two-component curve: glue along the nodes
/// whose branches both lie in the designated classes, expand to an admissible
/// cover, then re-insert the remaining nodes one by one.
pub fn assemble_two_component(
    curve: &CurveGraph,
    side1: &ShapeSide<'_>,
    side2: &ShapeSide<'_>,
) -> Result<CoverMap, SurgeryError> {
    let pairs = node_pairs(curve, side1.component, side2.component)?;
    let class_of = |side: &ShapeSide<'_>, p: &str| side.behavior.class_of(p);
    let mut core = Vec::new();
    let mut rest = Vec::new();
    for (node, p1, p2) in &pairs {
        let c1 = class_of(side1, p1).ok_or_else(|| SurgeryError::BehaviorMismatch(side1.component.to_string()))?;
        let c2 = class_of(side2, p2).ok_or_else(|| SurgeryError::BehaviorMismatch(side2.component.to_string()))?;
        if c1 == side1.designated && c2 == side2.designated {
            core.push((node.clone(), p1.clone(), p2.clone()));
        } else {
            rest.push((node.clone(), p1.clone(), p2.clone(), c1 == side1.designated || c2 == side2.designated));
        }
    }
    if core.is_empty() {
        return Err(SurgeryError::EmptyCore);
    }
    let mut pieces = Vec::new();
    for (i, side) in [side1, side2].into_iter().enumerate() {
        let genus = curve.component(side.component).unwrap().genus;
        let cover = side
            .behavior
            .cover(side.component, genus)
            .map_err(|_| SurgeryError::BehaviorMismatch(side.component.to_string()))?;
        let branches: Vec<&str> = core.iter().map(|(_, p1, p2)| if i == 0 { p1.as_str() } else { p2.as_str() }).collect();
        pieces.push(GluePiece::new(cover, &side.behavior.class_point(side.component, side.designated), &branches)?);
    }
    let incidences: Vec<NodeIncidence> = core
        .iter()
        .map(|(n, p1, p2)| NodeIncidence::minimal(&pieces, n, (0, p1), (1, p2)).unwrap())
        .collect();
    let glued = glue_covers(&pieces, &incidences)?;
    if !glued.quasi_admissible {
        return Err(SurgeryError::Construction("glue".into()));
    }
    let mut cover = to_admissible(&glued.cover)?;
    for (node, p1, p2, matched) in rest {
        let mode = if matched { GlueMode::Matched } else { GlueMode::Unmatched };
        cover = glue_node_on_cover(
            &cover,
            &node,
            &PointRef::new(side1.component, p1),
            &PointRef::new(side2.component, p2),
            mode,
        )?;
    }
    Ok(cover)
}

/// Nodes of a two-component curve as (node, branch on c1, branch on c2).
pub fn node_pairs(curve: &CurveGraph, c1: &str, c2: &str) -> Result<Vec<(String, String, String)>, SurgeryError> {
    if curve.num_components() != 2 || curve.component(c1).is_none() || curve.component(c2).is_none() || c1 == c2 {
        return Err(SurgeryError::NotTwoComponent);
    }
    curve
        .nodes()
        .map(|n| {
            if n.is_self_node() {
                Err(SurgeryError::NotTwoComponent)
            } else if n.branch_a.component == c1 {
                Ok((n.id.clone(), n.branch_a.point.clone(), n.branch_b.point.clone()))
            } else {
                Ok((n.id.clone(), n.branch_b.point.clone(), n.branch_a.point.clone()))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(g1: u32, g2: u32, delta: usize) -> CurveGraph {
        let mut c = CurveGraph::new();
        c.add_component("C1", g1).unwrap();
        c.add_component("C2", g2).unwrap();
        for j in 1..=delta {
            c.add_node(format!("n{j}"), PointRef::new("C1", format!("a{j}")), PointRef::new("C2", format!("b{j}")))
                .unwrap();
        }
        c
    }

    fn piece(comp: &str, genus: u32, b: &MapBehavior, branches: &[&str]) -> GluePiece {
        let cover = b.cover(comp, genus).unwrap();
        GluePiece::new(cover, &b.class_point(comp, 0), branches).unwrap()
    }

    fn glue_one_node(k: u32, e1: u32, e2: u32, genus: u32) -> GlueOutcome {
        let b1 = MapBehavior::new(k).with_padded_class(&[("a1", e1)]);
        let b2 = MapBehavior::new(k).with_padded_class(&[("b1", e2)]);
        let pieces = vec![piece("C1", genus, &b1, &["a1"]), piece("C2", genus, &b2, &["b1"])];
        let inc = NodeIncidence::minimal(&pieces, "n1", (0, "a1"), (1, "b1")).unwrap();
        assert_eq!(inc.e_n, e1.min(e2));
        glue_covers(&pieces, &[inc]).unwrap()
    }

    #[test]
    fn one_node_gluing_degree() {
        for (k, e1, e2) in [(2, 2, 2), (2, 1, 1), (3, 1, 1), (3, 3, 1), (3, 2, 3)] {
            let out = glue_one_node(k, e1, e2, 3);
            assert_eq!(out.degree, 2 * k - e1.min(e2), "{k} {e1} {e2}");
            assert!(out.quasi_admissible);
            assert!(out.hypotheses_hold);
            assert!(out.cover.source.stably_equivalent(&curve(3, 3, 1)));
        }
    }

    #[test]
    fn expansion_keeps_degree_and_becomes_admissible() {
        for (k, e) in [(3, 3), (4, 3), (4, 4)] {
            let b = MapBehavior::new(k).with_padded_class(&[("a1", e)]);
            let cover = b.cover("C1", 3).unwrap();
            assert!(cover.is_quasi_admissible() && !cover.is_admissible());
            let adm = to_admissible(&cover).unwrap();
            assert!(adm.is_admissible());
            assert_eq!(adm.degree(), Some(k));
            assert!(adm.source.stably_equivalent(&cover.source));
            assert!(adm.global_riemann_hurwitz());
            let q = b.class_point("C1", 0);
            assert!(adm.target.curve().component(&format!("{q}.E")).is_some());
        }
    }

    #[test]
    fn expansion_of_admissible_cover_is_identity() {
        let out = glue_one_node(2, 1, 1, 2);
        let once = to_admissible(&out.cover).unwrap();
        assert_eq!(to_admissible(&once).unwrap(), once);
    }

    #[test]
    fn piece_validation() {
        let b = MapBehavior::new(3).with_padded_class(&[("a1", 1)]);
        let cover = b.cover("C1", 3).unwrap();
        assert!(matches!(
            GluePiece::new(cover.clone(), &b.class_point("C1", 0), &["zz"]),
            Err(SurgeryError::BranchNotConjugated(_))
        ));
        assert!(matches!(
            GluePiece::new(cover, "nowhere", &["a1"]),
            Err(SurgeryError::DesignatedNotSmooth(_))
        ));
    }

    #[test]
    fn assembled_covers_match_the_shape_degree() {
        // a1,a2 in separate classes; only n1 has both branches designated.
        let b1 = MapBehavior::new(2).with_padded_class(&[("a1", 1)]).with_padded_class(&[("a2", 1)]);
        let b2 = MapBehavior::new(2).with_padded_class(&[("b1", 1)]).with_padded_class(&[("b2", 1)]);
        let c = curve(2, 2, 2);
        let s1 = ShapeSide { component: "C1", behavior: &b1, designated: 0 };
        let s2 = ShapeSide { component: "C2", behavior: &b2, designated: 0 };
        let cm = assemble_two_component(&c, &s1, &s2).unwrap();
        assert!(cm.is_admissible());
        assert_eq!(cm.degree(), Some(2 + 2 - 1 + 1));
        assert!(cm.source.stably_equivalent(&c));

        let both = MapBehavior::new(2).with_padded_class(&[("a1", 1), ("a2", 1)]);
        let both2 = MapBehavior::new(2).with_padded_class(&[("b1", 1), ("b2", 1)]);
        let s1 = ShapeSide { component: "C1", behavior: &both, designated: 0 };
        let s2 = ShapeSide { component: "C2", behavior: &both2, designated: 0 };
        let cm = assemble_two_component(&c, &s1, &s2).unwrap();
        assert_eq!(cm.degree(), Some(2));

        // n2 has only its C2 branch designated, so it costs nothing extra.
        let s1 = ShapeSide { component: "C1", behavior: &b1, designated: 0 };
        let s2 = ShapeSide { component: "C2", behavior: &both2, designated: 0 };
        let cm = assemble_two_component(&c, &s1, &s2).unwrap();
        assert!(cm.is_admissible());
        assert_eq!(cm.degree(), Some(2 + 2 - 1));
    }

    #[test]
    fn empty_core_is_rejected() {
        let b1 = MapBehavior::new(2).with_padded_class(&[("a1", 1)]).with_padded_class(&[("a2", 1)]);
        let b2 = MapBehavior::new(2).with_padded_class(&[("b1", 1)]).with_padded_class(&[("b2", 1)]);
        let c = curve(2, 2, 2);
        let s1 = ShapeSide { component: "C1", behavior: &b1, designated: 0 };
        let s2 = ShapeSide { component: "C2", behavior: &b2, designated: 1 };
        let pairs = node_pairs(&c, "C1", "C2").unwrap();
        assert_eq!(pairs[1], ("n2".to_string(), "a2".to_string(), "b2".to_string()));
        assert!(matches!(assemble_two_component(&c, &s1, &s2), Err(SurgeryError::EmptyCore)));
        let s1b = ShapeSide { designated: 1, ..s1.clone() };
        assert_eq!(assemble_two_component(&c, &s1b, &s2).unwrap().degree(), Some(2 + 2 - 1 + 1));
    }

    #[test]
    fn node_pairs_needs_two_components() {
        let mut c = curve(2, 2, 1);
        c.add_component("C3", 1).unwrap();
        assert!(matches!(node_pairs(&c, "C1", "C2"), Err(SurgeryError::NotTwoComponent)));
    }
}

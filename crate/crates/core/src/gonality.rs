//! Gonality bounds, the one-node formula and the hyperelliptic / trigonal
//! classification of two-component stable curves.
//!
//! Component level facts enter as [`ComponentProfile`]s: the maps a component
//! is known to admit, described by their behavior at the node branches.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::cover::{branch_budget, ComponentMapDatum, CoverError, CoverMap, FiberPoint, TargetTree};
use crate::curve_graph::CurveGraph;
use crate::oracle::{self, HurwitzDatum};
use crate::surgery::node_pairs;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GonalityError {
    #[error("component `{0}` is rational")]
    RationalComponent(String),
    #[error("curve must have exactly two components joined by non-self nodes")]
    NotTwoComponent,
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("behavior {index} on `{component}`: {reason}")]
    InvalidBehavior { component: String, index: usize, reason: String },
    #[error("ramification index {index} out of range for gonality {gonality}")]
    IndexOutOfRange { gonality: u32, index: u32 },
    #[error("gonality {gonality} invalid for genus {genus}")]
    InvalidGonality { genus: u32, gonality: u32 },
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// A set of node branches sharing one image point, with the indices of the
/// remaining points of that fiber.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BehaviorClass {
    pub branches: Vec<FiberPoint>,
    pub extra: Vec<u32>,
}

impl BehaviorClass {
    pub fn sum(&self) -> u32 {
        self.branches.iter().map(|p| p.index).sum::<u32>() + self.extra.iter().sum::<u32>()
    }
}

/// How one map from a component to the line looks at the node branches.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MapBehavior {
    pub degree: u32,
    pub classes: Vec<BehaviorClass>,
}

impl MapBehavior {
    pub fn new(degree: u32) -> Self {
        MapBehavior { degree, classes: Vec::new() }
    }

    /// Adds a class; the remaining sheets are filled with unramified points.
    pub fn with_class(mut self, branches: &[(&str, u32)], extra: &[u32]) -> Self {
        let branches: Vec<FiberPoint> = branches.iter().map(|(p, e)| FiberPoint::new(*p, *e)).collect();
        self.classes.push(BehaviorClass {
            branches,
            extra: extra.to_vec(),
        });
        self
    }

    /// Like [`Self::with_class`] but pads with index-1 extras up to the degree.
    pub fn with_padded_class(self, branches: &[(&str, u32)]) -> Self {
        let used: u32 = branches.iter().map(|(_, e)| *e).sum();
        let pad = vec![1; self.degree.saturating_sub(used) as usize];
        self.with_class(branches, &pad)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.degree == 0 {
            return Err("degree must be positive".into());
        }
        let mut seen = BTreeSet::new();
        for (i, c) in self.classes.iter().enumerate() {
            if c.branches.is_empty() {
                return Err(format!("class {i} has no branches"));
            }
            for p in &c.branches {
                if !seen.insert(p.point.as_str()) {
                    return Err(format!("branch `{}` listed twice", p.point));
                }
            }
            let indices = c.branches.iter().map(|p| p.index).chain(c.extra.iter().copied());
            for e in indices {
                if e == 0 || e > self.degree {
                    return Err(format!("index {e} outside 1..={}", self.degree));
                }
            }
            if c.sum() != self.degree {
                return Err(format!("class {i} sums to {} instead of {}", c.sum(), self.degree));
            }
        }
        Ok(())
    }

    pub fn branch_points(&self) -> BTreeSet<String> {
        self.classes
            .iter()
            .flat_map(|c| c.branches.iter().map(|p| p.point.clone()))
            .collect()
    }

    pub fn class_of(&self, point: &str) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.branches.iter().any(|p| p.point == point))
    }

    pub fn index_of(&self, point: &str) -> Option<u32> {
        self.classes
            .iter()
            .flat_map(|c| &c.branches)
            .find(|p| p.point == point)
            .map(|p| p.index)
    }

    /// All branches share one image.
    pub fn all_conjugated(&self) -> bool {
        self.classes.len() == 1
    }

    pub fn target_id(component: &str) -> String {
        format!("{component}.T")
    }

    pub fn class_point(&self, component: &str, class: usize) -> String {
        format!("{component}.T.c{class}")
    }

    /// Simple branch points left over once the classes are placed.
    pub fn residual(&self, genus: u32) -> Option<u32> {
        let declared: u32 = self
            .classes
            .iter()
            .flat_map(|c| c.branches.iter().map(|p| p.index).chain(c.extra.iter().copied()))
            .map(|e| e - 1)
            .sum();
        branch_budget(genus, self.degree).checked_sub(declared)
    }

    pub fn hurwitz_datum(&self, genus: u32) -> Option<HurwitzDatum> {
        let mut profiles: Vec<Vec<u32>> = self
            .classes
            .iter()
            .map(|c| {
                let mut p: Vec<u32> = c.branches.iter().map(|p| p.index).chain(c.extra.iter().copied()).collect();
                p.sort_unstable_by(|a, b| b.cmp(a));
                p
            })
            .collect();
        let mut simple = vec![2];
        simple.extend(std::iter::repeat_n(1, self.degree.checked_sub(2)? as usize));
        for _ in 0..self.residual(genus)? {
            profiles.push(simple.clone());
        }
        Some(HurwitzDatum::new(self.degree, profiles))
    }

    /// The map as a cover of a single line. Anonymous points are named
    /// `{component}.m{class}.{j}`.
    pub fn cover(&self, component: &str, genus: u32) -> Result<CoverMap, GonalityError> {
        let invalid = |reason: String| GonalityError::InvalidBehavior {
            component: component.to_string(),
            index: 0,
            reason,
        };
        self.validate().map_err(invalid)?;
        if genus > 0 && self.degree == 1 {
            return Err(invalid("no degree-1 map from a curve of positive genus".into()));
        }
        let residual = self
            .residual(genus)
            .ok_or_else(|| invalid("declared ramification exceeds the Riemann-Hurwitz budget".into()))?;
        let tid = Self::target_id(component);
        let target = TargetTree::line(&tid, (0..self.classes.len()).map(|i| self.class_point(component, i)));
        let mut datum = ComponentMapDatum::new(component, tid, self.degree).with_residual(residual);
        let mut source = CurveGraph::new();
        source.add_component(component, genus).map_err(CoverError::from)?;
        for (i, c) in self.classes.iter().enumerate() {
            let mut fiber = c.branches.clone();
            for (j, e) in c.extra.iter().enumerate() {
                fiber.push(FiberPoint::new(format!("{component}.m{i}.{j}"), *e));
            }
            datum = datum.with_fiber(self.class_point(component, i), fiber);
        }
        Ok(CoverMap::new(source, target, [datum])?)
    }
}

/// What is known about the maps from one smooth component to the line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentProfile {
    pub genus: u32,
    pub gonality: u32,
    pub behaviors: Vec<MapBehavior>,
    /// Every map of degree at most the search cap appears among `behaviors`.
    pub complete: bool,
}

impl ComponentProfile {
    pub fn new(genus: u32, gonality: u32) -> Self {
        ComponentProfile {
            genus,
            gonality,
            behaviors: Vec::new(),
            complete: true,
        }
    }

    pub fn with_behavior(mut self, b: MapBehavior) -> Self {
        self.behaviors.push(b);
        self
    }

    pub fn incomplete(mut self) -> Self {
        self.complete = false;
        self
    }

    /// Behaviors of the given degree.
    pub fn of_degree(&self, degree: u32) -> impl Iterator<Item = &MapBehavior> {
        self.behaviors.iter().filter(move |b| b.degree == degree)
    }

    /// Checks the profile against the branches of `component` in `curve`.
    pub fn validate(&self, curve: &CurveGraph, component: &str) -> Result<(), GonalityError> {
        let comp = curve
            .component(component)
            .ok_or_else(|| GonalityError::UnknownComponent(component.to_string()))?;
        if comp.genus != self.genus || (self.genus > 0 && self.gonality < 2) || self.gonality == 0 {
            return Err(GonalityError::InvalidGonality {
                genus: self.genus,
                gonality: self.gonality,
            });
        }
        let branches: BTreeSet<String> = curve.branch_points(component).into_iter().map(String::from).collect();
        for (index, b) in self.behaviors.iter().enumerate() {
            let fail = |reason: String| GonalityError::InvalidBehavior {
                component: component.to_string(),
                index,
                reason,
            };
            b.validate().map_err(fail)?;
            if b.branch_points() != branches {
                return Err(fail("behavior does not list exactly the node branches".into()));
            }
            if b.degree < self.gonality {
                return Err(fail(format!("degree {} below gonality {}", b.degree, self.gonality)));
            }
            let ok = b.hurwitz_datum(self.genus).is_some_and(|h| oracle::hurwitz_necessary(&h));
            if !ok {
                return Err(fail("fails the Hurwitz necessary conditions".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Hyperelliptic,
    Trigonal,
    NeitherAtMost3,
    NotHyperelliptic,
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Hyperelliptic => "hyperelliptic",
            Verdict::Trigonal => "trigonal",
            Verdict::NeitherAtMost3 => "neither hyperelliptic nor trigonal",
            Verdict::NotHyperelliptic => "not hyperelliptic",
            Verdict::Undecided => "undecided",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    pub cases: Vec<&'static str>,
    pub witness: Option<CoverMap>,
}

impl ClassificationResult {
    fn bare(verdict: Verdict) -> Self {
        ClassificationResult {
            verdict,
            cases: Vec::new(),
            witness: None,
        }
    }
}

/// `Σ gon(C_i) + δ − 2(p − 1)` over all components.
pub fn generic_upper_bound(c: &CurveGraph, gonalities: &BTreeMap<String, u32>) -> Result<u32, GonalityError> {
    let mut sum = 0i64;
    for id in c.component_ids() {
        sum += *gonalities.get(&id).ok_or(GonalityError::UnknownComponent(id))? as i64;
    }
    let p = c.num_components() as i64;
    Ok((sum + c.num_nodes() as i64 - 2 * (p - 1)).max(1) as u32)
}

/// `gon(Y_1) + gon(Y_2) + |Y_1 ∩ Y_2| − 2` for complementary subcurves.
pub fn generic_upper_bound_subcurves(c: &CurveGraph, y1: &BTreeSet<String>, gon_y1: u32, gon_y2: u32) -> Result<u32, GonalityError> {
    let comp = c
        .subcurve_complement(y1)
        .map_err(|e| GonalityError::Cover(CoverError::Curve(e)))?;
    Ok((gon_y1 + gon_y2 + comp.intersection.len() as u32).saturating_sub(2).max(1))
}

fn two_components(c: &CurveGraph) -> Result<(String, String), GonalityError> {
    let ids: Vec<String> = c.component_ids().into_iter().collect();
    if ids.len() != 2 || c.nodes().any(|n| n.is_self_node()) || c.num_nodes() == 0 {
        return Err(GonalityError::NotTwoComponent);
    }
    Ok((ids[0].clone(), ids[1].clone()))
}

fn check_profiles(c: &CurveGraph, p1: &ComponentProfile, p2: &ComponentProfile) -> Result<(String, String), GonalityError> {
    let (c1, c2) = two_components(c)?;
    p1.validate(c, &c1)?;
    p2.validate(c, &c2)?;
    Ok((c1, c2))
}

/// `gon(C_1) + gon(C_2) − max e(π_1, π_2)` over gonal maps with every node
/// branch in one fiber; `None` when either side has no such map.
pub fn two_component_bound(c: &CurveGraph, p1: &ComponentProfile, p2: &ComponentProfile) -> Result<Option<u32>, GonalityError> {
    let (c1, c2) = check_profiles(c, p1, p2)?;
    let pairs = node_pairs(c, &c1, &c2).map_err(|_| GonalityError::NotTwoComponent)?;
    let pi1: Vec<_> = p1.of_degree(p1.gonality).filter(|b| b.all_conjugated()).collect();
    let pi2: Vec<_> = p2.of_degree(p2.gonality).filter(|b| b.all_conjugated()).collect();
    let best = pi1
        .iter()
        .flat_map(|b1| pi2.iter().map(move |b2| (b1, b2)))
        .map(|(b1, b2)| {
            pairs
                .iter()
                .map(|(_, x, y)| b1.index_of(x).unwrap().min(b2.index_of(y).unwrap()))
                .sum::<u32>()
        })
        .max();
    Ok(best.map(|e| p1.gonality + p2.gonality - e))
}

/// `gon_1 + gon_2 − min(e_1, e_2)` for a single node.
pub fn exact_gonality_one_node(gon1: u32, gon2: u32, e1: u32, e2: u32) -> Result<u32, GonalityError> {
    for (g, e) in [(gon1, e1), (gon2, e2)] {
        if e == 0 || e > g {
            return Err(GonalityError::IndexOutOfRange { gonality: g, index: e });
        }
    }
    Ok(gon1 + gon2 - e1.min(e2))
}

pub fn component_lower_bound(p1: &ComponentProfile, p2: &ComponentProfile) -> u32 {
    p1.gonality.max(p2.gonality)
}

/// Numeric form of the node count constraint: a component restriction of
/// full degree forces `δ ≤ deg`.
pub fn delta_degree_admits(delta: u32, restriction_degree: u32, degree: u32) -> bool {
    restriction_degree != degree || delta <= degree
}

/// Whether `cm`, a cover of a curve stably equivalent to `curve`, satisfies
/// the node count and index comparison constraints for full-degree restrictions.
pub fn delta_degree_constraint(cm: &CoverMap, curve: &CurveGraph) -> bool {
    let Ok((c1, c2)) = two_components(curve) else {
        return true;
    };
    let Ok(pairs) = node_pairs(curve, &c1, &c2) else {
        return true;
    };
    let (Ok(d1), Ok(d2), Some(k)) = (cm.restrict(&c1), cm.restrict(&c2), cm.degree()) else {
        return true;
    };
    let delta = pairs.len() as u32;
    let full = [d1.degree == k, d2.degree == k];
    if !full[0] && !full[1] {
        return true;
    }
    if delta > k || d1.target == d2.target {
        return false;
    }
    let q1 = cm.target.point_towards(&d1.target, &d2.target);
    let q2 = cm.target.point_towards(&d2.target, &d1.target);
    pairs.iter().all(|(_, x, y)| {
        let (Some((b1, e1)), Some((b2, e2))) = (cm.locate(&c1, x), cm.locate(&c2, y)) else {
            return true;
        };
        if Some(&b1) != q1.as_ref() || Some(&b2) != q2.as_ref() {
            return true;
        }
        (!full[0] || e1 >= e2) && (!full[1] || e2 >= e1)
    })
}

/// One side of a behavior pair, reindexed by node.
struct Side<'a> {
    b: &'a MapBehavior,
    idx: Vec<u32>,
    class: Vec<usize>,
}

impl<'a> Side<'a> {
    fn new(b: &'a MapBehavior, points: &[&str]) -> Self {
        Side {
            b,
            idx: points.iter().map(|p| b.index_of(p).unwrap()).collect(),
            class: points.iter().map(|p| b.class_of(p).unwrap()).collect(),
        }
    }

    fn deg(&self, d: u32) -> bool {
        self.b.degree == d
    }

    fn conjugated(&self) -> bool {
        self.class.iter().all(|c| *c == self.class[0])
    }

    fn non_conjugated(&self) -> bool {
        let distinct: BTreeSet<_> = self.class.iter().collect();
        distinct.len() == self.class.len()
    }

    fn all_idx(&self, allowed: &[u32]) -> bool {
        self.idx.iter().all(|e| allowed.contains(e))
    }

    fn idx_set(&self) -> Vec<u32> {
        let mut v = self.idx.clone();
        v.sort_unstable();
        v
    }

    /// Two conjugated branches of index 1 and a third, outside their fiber,
    /// of index 1 or 2.
    fn two_plus_one(&self) -> bool {
        if self.idx.len() != 3 {
            return false;
        }
        (0..3).any(|odd| {
            let pair: Vec<usize> = (0..3).filter(|j| *j != odd).collect();
            self.class[pair[0]] == self.class[pair[1]]
                && self.class[odd] != self.class[pair[0]]
                && self.idx[pair[0]] == 1
                && self.idx[pair[1]] == 1
                && [1, 2].contains(&self.idx[odd])
        })
    }
}

pub const HYP_I: &str = "Thm 5.3 (i)";
pub const HYP_II: &str = "Thm 5.3 (ii)";

/// All case labels of the trigonal classification, in order.
pub const TRIGONAL_CASES: [&str; 11] = [
    "Thm 5.6 (i)(a)",
    "Thm 5.6 (i)(b)",
    "Thm 5.6 (i)(c)",
    "Thm 5.6 (ii)(a)",
    "Thm 5.6 (ii)(b)",
    "Thm 5.6 (ii)(c)",
    "Thm 5.6 (ii)(d)",
    "Thm 5.6 (ii)(e)",
    "Thm 5.6 (iii)(a)",
    "Thm 5.6 (iii)(b)",
    "Thm 5.6 (iii)(c)",
];

fn hyperelliptic_cases(a: &Side<'_>, b: &Side<'_>) -> Vec<&'static str> {
    let mut out = Vec::new();
    if !(a.deg(2) && b.deg(2)) {
        return out;
    }
    let delta = a.idx.len();
    if delta == 1 && a.idx[0] == 2 && b.idx[0] == 2 {
        out.push(HYP_I);
    }
    if delta == 2 && a.conjugated() && b.conjugated() && a.all_idx(&[1]) && b.all_idx(&[1]) {
        out.push(HYP_II);
    }
    out
}

/// Trigonal cases matched with `a` on the first component and `b` on the second.
fn trigonal_cases_oriented(a: &Side<'_>, b: &Side<'_>) -> Vec<&'static str> {
    let mut out = Vec::new();
    match a.idx.len() {
        1 => {
            let (ea, eb) = (a.idx[0], b.idx[0]);
            if a.deg(2) && ea == 1 && b.deg(2) && [1, 2].contains(&eb) {
                out.push(TRIGONAL_CASES[0]);
            }
            if a.deg(2) && ea == 2 && b.deg(3) && [2, 3].contains(&eb) {
                out.push(TRIGONAL_CASES[1]);
            }
            if a.deg(3) && ea == 3 && b.deg(3) && eb == 3 {
                out.push(TRIGONAL_CASES[2]);
            }
        }
        2 => {
            if a.deg(2) && a.conjugated() && a.all_idx(&[1]) && b.deg(3) && b.conjugated() && b.all_idx(&[1, 2]) {
                out.push(TRIGONAL_CASES[3]);
            }
            if a.deg(3)
                && b.deg(3)
                && a.conjugated()
                && b.conjugated()
                && a.idx_set() == [1, 2]
                && b.idx_set() == [1, 2]
                && a.idx == b.idx
            {
                out.push(TRIGONAL_CASES[4]);
            }
            if a.deg(2) && a.non_conjugated() && a.idx.contains(&2) && b.deg(3) && b.conjugated() && b.idx_set() == [1, 2] {
                let j = b.idx.iter().position(|e| *e == 2).unwrap();
                if a.idx[j] == 2 {
                    out.push(TRIGONAL_CASES[5]);
                }
            }
            if a.deg(2) && a.conjugated() && a.all_idx(&[1]) && b.deg(2) && b.non_conjugated() && b.all_idx(&[1, 2]) {
                out.push(TRIGONAL_CASES[6]);
            }
            if a.deg(2)
                && b.deg(2)
                && a.non_conjugated()
                && b.non_conjugated()
                && (0..2).any(|j| a.idx[j] == 2 && b.idx[j] == 2)
            {
                out.push(TRIGONAL_CASES[7]);
            }
        }
        3 => {
            if a.deg(3) && b.deg(3) && a.conjugated() && b.conjugated() && a.all_idx(&[1]) && b.all_idx(&[1]) {
                out.push(TRIGONAL_CASES[8]);
            }
            if a.deg(2) && a.two_plus_one() && b.deg(3) && b.conjugated() && b.all_idx(&[1]) {
                out.push(TRIGONAL_CASES[9]);
            }
            if a.deg(2) && b.deg(2) && a.two_plus_one() && b.two_plus_one() {
                out.push(TRIGONAL_CASES[10]);
            }
        }
        _ => {}
    }
    out
}

type CaseMatcher = fn(&Side<'_>, &Side<'_>) -> Vec<&'static str>;

/// Runs `matcher` over every behavior pair in both orientations; returns the
/// matched labels and, per label, the behavior pairs realizing it.
fn collect_cases<'a>(
    c: &CurveGraph,
    c1: &str,
    c2: &str,
    p1: &'a ComponentProfile,
    p2: &'a ComponentProfile,
    matcher: CaseMatcher,
) -> BTreeMap<&'static str, Vec<(&'a MapBehavior, &'a MapBehavior)>> {
    let pairs = node_pairs(c, c1, c2).unwrap_or_default();
    let pts1: Vec<&str> = pairs.iter().map(|(_, x, _)| x.as_str()).collect();
    let pts2: Vec<&str> = pairs.iter().map(|(_, _, y)| y.as_str()).collect();
    let mut found: BTreeMap<&'static str, Vec<_>> = BTreeMap::new();
    for b1 in &p1.behaviors {
        for b2 in &p2.behaviors {
            let (s1, s2) = (Side::new(b1, &pts1), Side::new(b2, &pts2));
            let mut labels = matcher(&s1, &s2);
            labels.extend(matcher(&s2, &s1));
            for l in labels {
                let v = found.entry(l).or_default();
                if !v.contains(&(b1, b2)) {
                    v.push((b1, b2));
                }
            }
        }
    }
    found
}

fn require_nonrational(c: &CurveGraph) -> Result<(), GonalityError> {
    if let Some(r) = c.components().find(|x| x.genus == 0) {
        return Err(GonalityError::RationalComponent(r.id.clone()));
    }
    Ok(())
}

fn witness_for(
    c: &CurveGraph,
    c1: &str,
    c2: &str,
    found: &BTreeMap<&'static str, Vec<(&MapBehavior, &MapBehavior)>>,
    degree: u32,
) -> Option<CoverMap> {
    found.values().flatten().find_map(|(b1, b2)| {
        oracle::cheapest_cover(c, c1, &[*b1], c2, &[*b2], degree)
            .filter(|(k, _)| *k == degree)
            .map(|(_, cm)| cm)
    })
}

fn order_cases(found: &BTreeMap<&'static str, Vec<(&MapBehavior, &MapBehavior)>>, order: &[&'static str]) -> Vec<&'static str> {
    order.iter().copied().filter(|l| found.contains_key(l)).collect()
}

pub fn classify_hyperelliptic(c: &CurveGraph, p1: &ComponentProfile, p2: &ComponentProfile) -> Result<ClassificationResult, GonalityError> {
    require_nonrational(c)?;
    let (c1, c2) = check_profiles(c, p1, p2)?;
    if p1.gonality != 2 || p2.gonality != 2 || c.num_nodes() > 2 {
        return Ok(ClassificationResult::bare(Verdict::NotHyperelliptic));
    }
    let found = collect_cases(c, &c1, &c2, p1, p2, hyperelliptic_cases);
    if found.is_empty() {
        let complete = p1.complete && p2.complete;
        return Ok(ClassificationResult::bare(if complete { Verdict::NotHyperelliptic } else { Verdict::Undecided }));
    }
    Ok(ClassificationResult {
        verdict: Verdict::Hyperelliptic,
        cases: order_cases(&found, &[HYP_I, HYP_II]),
        witness: witness_for(c, &c1, &c2, &found, 2),
    })
}

/// Decides hyperellipticity first; otherwise checks the trigonal cases.
pub fn classify_trigonal(c: &CurveGraph, p1: &ComponentProfile, p2: &ComponentProfile) -> Result<ClassificationResult, GonalityError> {
    let hyp = classify_hyperelliptic(c, p1, p2)?;
    if hyp.verdict == Verdict::Hyperelliptic {
        return Ok(hyp);
    }
    let (c1, c2) = two_components(c)?;
    if p1.gonality > 3 || p2.gonality > 3 || c.num_nodes() > 3 {
        return Ok(ClassificationResult::bare(Verdict::NeitherAtMost3));
    }
    let found = collect_cases(c, &c1, &c2, p1, p2, trigonal_cases_oriented);
    if found.is_empty() {
        let decided = hyp.verdict == Verdict::NotHyperelliptic && p1.complete && p2.complete;
        return Ok(ClassificationResult::bare(if decided { Verdict::NeitherAtMost3 } else { Verdict::Undecided }));
    }
    Ok(ClassificationResult {
        verdict: Verdict::Trigonal,
        cases: order_cases(&found, &TRIGONAL_CASES),
        witness: witness_for(c, &c1, &c2, &found, 3),
    })
}

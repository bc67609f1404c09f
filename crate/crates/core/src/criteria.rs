//! Identification criteria: back-door, covariate adjustment, Pearl's front-door
//! and the generalized front-door criterion, plus necessity-pattern detectors.
//!
//! Each condition is phrased as "no path of some kind is open", so a checker
//! runs one constrained path search per condition and reports the canonical
//! (shortest, then lexicographically least) offending path as its witness.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Admg, GraphError, NodeSet};
use crate::paths::{FirstEdge, Path, PathError, PathSearch, Traversal};
use crate::projection::{latent_project, ProjectionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
}

/// Treatment `x`, outcome `y` and mediator/adjustment set `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub x: NodeSet,
    pub y: NodeSet,
    pub z: NodeSet,
}

impl Query {
    pub fn new(x: NodeSet, y: NodeSet, z: NodeSet) -> Self {
        Query { x, y, z }
    }

    pub fn from_labels<'a>(x: &[&'a str], y: &[&'a str], z: &[&'a str]) -> Self {
        Query::new(NodeSet::from_labels(x), NodeSet::from_labels(y), NodeSet::from_labels(z))
    }

    pub fn all_nodes(&self) -> NodeSet {
        self.x.union(&self.y).union(&self.z)
    }

    /// Pairwise disjoint, `x` and `y` non-empty, every node observed in `g`.
    pub fn validate(&self, g: &Admg) -> Result<(), CriteriaError> {
        if self.x.is_empty() || self.y.is_empty() {
            return Err(CriteriaError::InvalidQuery("x and y must be non-empty".into()));
        }
        if !self.x.is_disjoint(&self.y) || !self.x.is_disjoint(&self.z) || !self.y.is_disjoint(&self.z) {
            return Err(CriteriaError::InvalidQuery("x, y and z must be pairwise disjoint".into()));
        }
        for n in self.all_nodes().iter() {
            if !g.contains(n) {
                return Err(GraphError::UnknownNode(n.clone()).into());
            }
            if g.is_latent(n) {
                return Err(CriteriaError::InvalidQuery(format!("`{n}` is latent")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Backdoor,
    Adjustment,
    Fdc,
    Gfdc,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [Criterion::Backdoor, Criterion::Adjustment, Criterion::Fdc, Criterion::Gfdc];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Backdoor => "backdoor",
            Criterion::Adjustment => "adjustment",
            Criterion::Fdc => "fdc",
            Criterion::Gfdc => "gfdc",
        }
    }

    pub fn check(self, g: &Admg, q: &Query) -> Result<CriterionReport, CriteriaError> {
        match self {
            Criterion::Backdoor => check_backdoor(g, q),
            Criterion::Adjustment => check_adjustment(g, q),
            Criterion::Fdc => check_pearl_fdc(g, q),
            Criterion::Gfdc => check_generalized_fdc(g, q),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown criterion `{s}` (expected backdoor, adjustment, fdc or gfdc)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub label: String,
    pub holds: bool,
    /// Present exactly when the condition fails.
    pub witness: Option<Path>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub holds: bool,
    pub conditions: Vec<ConditionResult>,
}

impl CriterionReport {
    fn new(criterion: Criterion, conditions: Vec<ConditionResult>) -> Self {
        CriterionReport { criterion, holds: conditions.iter().all(|c| c.holds), conditions }
    }

    pub fn condition(&self, label: &str) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.label == label)
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "criterion {}: {}", self.criterion, if self.holds { "holds" } else { "fails" })?;
        for c in &self.conditions {
            write!(f, "  ({}) {}", c.label, if c.holds { "ok" } else { "violated" })?;
            if let Some(w) = &c.witness {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn condition(label: &str, witness: Option<Path>) -> ConditionResult {
    ConditionResult { label: label.into(), holds: witness.is_none(), witness }
}

struct Masks {
    x: Vec<bool>,
    y: Vec<bool>,
    z: Vec<bool>,
}

fn masks(g: &Admg, q: &Query) -> Result<Masks, CriteriaError> {
    q.validate(g)?;
    Ok(Masks { x: g.mask(&q.x)?, y: g.mask(&q.y)?, z: g.mask(&q.z)? })
}

fn unit(n: usize, i: usize) -> Vec<bool> {
    let mut m = vec![false; n];
    m[i] = true;
    m
}

/// Canonical direct path from `from` into `to`, if any.
fn direct_path(g: &Admg, from: Vec<bool>, to: Vec<bool>, proper: bool) -> Result<Option<Path>, PathError> {
    let mut s = PathSearch::new(g, from, to);
    s.direct = true;
    s.proper = proper;
    s.first()
}

fn concat(a: Path, b: Path) -> Path {
    let mut nodes = a.nodes().to_vec();
    nodes.extend_from_slice(&b.nodes()[1..]);
    let mut steps = a.traversals().to_vec();
    steps.extend_from_slice(b.traversals());
    Path::new(nodes, steps).expect("joined direct paths are simple in an acyclic graph")
}

/// (1) every back-door path from x to y is closed given z; (2) z has no descendant of x.
pub fn check_backdoor(g: &Admg, q: &Query) -> Result<CriterionReport, CriteriaError> {
    let m = masks(g, q)?;
    let mut s = PathSearch::new(g, m.x.clone(), m.y);
    s.first = FirstEdge::Into;
    s.open_given(m.z.clone());
    let c1 = s.first()?;
    let c2 = direct_path(g, m.x, m.z, false)?;
    Ok(CriterionReport::new(Criterion::Backdoor, vec![condition("1", c1), condition("2", c2)]))
}

/// Nodes outside x lying on some proper direct path from x to y.
fn proper_causal_nodes(g: &Admg, x: &[bool], y: &[bool]) -> Vec<bool> {
    let n = g.len();
    let mut fwd = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| x[v]).collect();
    while let Some(v) = stack.pop() {
        for &c in g.children_of(v) {
            if !x[c] && !fwd[c] {
                fwd[c] = true;
                stack.push(c);
            }
        }
    }
    let mut bwd: Vec<bool> = (0..n).map(|v| y[v] && !x[v]).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| bwd[v]).collect();
    while let Some(v) = stack.pop() {
        for &p in g.parents_of(v) {
            if !x[p] && !bwd[p] {
                bwd[p] = true;
                stack.push(p);
            }
        }
    }
    (0..n).map(|v| fwd[v] && bwd[v]).collect()
}

/// (1) no z-node descends from a non-x node on a proper direct path x to y;
/// (2) every proper non-direct path from x to y is closed given z.
pub fn check_adjustment(g: &Admg, q: &Query) -> Result<CriterionReport, CriteriaError> {
    let m = masks(g, q)?;
    let n = g.len();
    let cp = proper_causal_nodes(g, &m.x, &m.y);

    let mut c1: Option<Path> = None;
    for w in (0..n).filter(|&w| cp[w]) {
        let reach = g.descendants_mask(&unit(n, w));
        if !(0..n).any(|v| reach[v] && m.z[v]) {
            continue;
        }
        let head = direct_path(g, m.x.clone(), unit(n, w), true)?.expect("w lies on a proper direct path");
        let candidate = if m.z[w] {
            head
        } else {
            let tail = direct_path(g, unit(n, w), m.z.clone(), false)?.expect("w has a descendant in z");
            concat(head, tail)
        };
        if c1.as_ref().is_none_or(|best| candidate < *best) {
            c1 = Some(candidate);
        }
    }

    let mut s = PathSearch::new(g, m.x, m.y);
    s.proper = true;
    s.reject_direct = true;
    s.open_given(m.z);
    let c2 = s.first()?;
    Ok(CriterionReport::new(Criterion::Adjustment, vec![condition("1", c1), condition("2", c2)]))
}

/// Pearl's conditions: (1) z intercepts every direct path from x to y;
/// (2) no back-door path from x to z is open; (3) every back-door path from z
/// to y is closed given x.
pub fn check_pearl_fdc(g: &Admg, q: &Query) -> Result<CriterionReport, CriteriaError> {
    let m = masks(g, q)?;
    let c1 = unblocked_direct_path(g, &m)?;

    let mut s2 = PathSearch::new(g, m.x.clone(), m.z.clone());
    s2.first = FirstEdge::Into;
    s2.open_given(vec![false; g.len()]);
    let c2 = s2.first()?;

    let mut s3 = PathSearch::new(g, m.z, m.y);
    s3.first = FirstEdge::Into;
    s3.open_given(m.x);
    let c3 = s3.first()?;
    Ok(CriterionReport::new(
        Criterion::Fdc,
        vec![condition("1", c1), condition("2", c2), condition("3", c3)],
    ))
}

fn unblocked_direct_path(g: &Admg, m: &Masks) -> Result<Option<Path>, PathError> {
    let mut s = PathSearch::new(g, m.x.clone(), m.y.clone());
    s.direct = true;
    s.avoid = Some(m.z.clone());
    s.first()
}

/// (i) no proper back-door path from x to z is open given the empty set;
/// (ii) no proper front-door path from x to y is open given z.
///
/// Condition (i) is equivalent to x and z being d-separated once every edge
/// out of x is removed, which is what the soundness argument consumes.
pub fn check_generalized_fdc(g: &Admg, q: &Query) -> Result<CriterionReport, CriteriaError> {
    let m = masks(g, q)?;
    let mut s1 = PathSearch::new(g, m.x.clone(), m.z.clone());
    s1.first = FirstEdge::Into;
    s1.proper = true;
    s1.open_given(vec![false; g.len()]);
    let c1 = s1.first()?;

    let c2 = cond_ii_witness(g, &m)?;
    Ok(CriterionReport::new(Criterion::Gfdc, vec![condition("i", c1), condition("ii", c2)]))
}

fn cond_ii_witness(g: &Admg, m: &Masks) -> Result<Option<Path>, PathError> {
    let mut s = PathSearch::new(g, m.x.clone(), m.y.clone());
    s.first = FirstEdge::OutOf;
    s.proper = true;
    s.open_given(m.z.clone());
    s.first()
}

/// A direct path from x to y with no node in z.
pub fn find_cond1_violation(g: &Admg, q: &Query) -> Result<Option<Path>, CriteriaError> {
    let m = masks(g, q)?;
    Ok(unblocked_direct_path(g, &m)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pattern {
    /// `X -> Y`
    A,
    /// `X -> Z1 <-> ... <-> Zk <- Y`
    B,
    /// `X -> Z1 <-> ... <-> Zk <-> Y`
    C,
}

impl FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" => Ok(Pattern::A),
            "b" => Ok(Pattern::B),
            "c" => Ok(Pattern::C),
            other => Err(format!("unknown pattern `{other}` (expected a, b or c)")),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::A => "a",
            Pattern::B => "b",
            Pattern::C => "c",
        })
    }
}

/// A necessity pattern found in the projection onto x, y and z.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternWitness {
    pub pattern: Pattern,
    pub path: Path,
    /// Number of z-nodes on the path.
    pub k: usize,
}

/// Searches `Pj(g, x ∪ y ∪ z)` for one of the patterns, returning the
/// canonical (shortest, then lexicographically least) occurrence.
pub fn find_cond_ii_pattern(g: &Admg, q: &Query) -> Result<Option<PatternWitness>, CriteriaError> {
    q.validate(g)?;
    let h = latent_project(g, &q.all_nodes())?;
    let m = masks(&h, q)?;
    let n = h.len();

    // Layer k holds chains X -> Z1 <-> ... <-> Zk over distinct z-nodes.
    let mut layer: Vec<Chain> = Vec::new();
    let mut best: Option<Chain> = None;
    for xi in (0..n).filter(|&v| m.x[v]) {
        for &c in h.children_of(xi) {
            if m.y[c] {
                offer((vec![xi, c], vec![Traversal::FORWARD]), &mut best);
            } else if m.z[c] {
                layer.push((vec![xi, c], vec![Traversal::FORWARD]));
            }
        }
    }
    while best.is_none() && !layer.is_empty() {
        let mut next = Vec::new();
        for (nodes, steps) in &layer {
            let last = *nodes.last().unwrap();
            for &p in h.parents_of(last).iter().filter(|&&p| m.y[p]) {
                offer(extend(nodes, steps, p, Traversal::BACKWARD), &mut best);
            }
            for &s in h.spouses_of(last) {
                if m.y[s] {
                    offer(extend(nodes, steps, s, Traversal::BIDIRECTED), &mut best);
                } else if m.z[s] && !nodes.contains(&s) {
                    next.push(extend(nodes, steps, s, Traversal::BIDIRECTED));
                }
            }
        }
        layer = next;
    }

    Ok(best.map(|(nodes, steps)| {
        let pattern = match (nodes.len(), steps.last()) {
            (2, _) => Pattern::A,
            (_, Some(&Traversal::BACKWARD)) => Pattern::B,
            _ => Pattern::C,
        };
        PatternWitness { pattern, k: nodes.len() - 2, path: Path::from_indices(&h, &nodes, &steps) }
    }))
}

type Chain = (Vec<usize>, Vec<Traversal>);

fn offer(cand: Chain, best: &mut Option<Chain>) {
    if best.as_ref().is_none_or(|b| cand < *b) {
        *best = Some(cand);
    }
}

fn extend(nodes: &[usize], steps: &[Traversal], v: usize, t: Traversal) -> Chain {
    let mut nodes = nodes.to_vec();
    let mut steps = steps.to_vec();
    nodes.push(v);
    steps.push(t);
    (nodes, steps)
}

//! Paths in an ADMG: enumeration, classification, openness and d-separation.
//!
//! A [`Path`] is a simple sequence of nodes joined by edge traversals. Every
//! traversal records whether the edge has an arrowhead at its left and at its
//! right end, so collider status of an interior node depends only on the two
//! traversals next to it.

mod search;

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Admg, Edge, GraphError, NodeId, NodeSet};

pub(crate) use search::{FirstEdge, PathSearch};

/// Default bound on the number of paths an enumeration may produce.
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("node sets must be pairwise disjoint")]
    SetsNotDisjoint,
    #[error("path search exceeded the cap of {0} paths")]
    LimitExceeded(usize),
    #[error("malformed path: {0}")]
    Malformed(String),
    #[error("`{0}` is not an edge of the graph")]
    NotInGraph(Edge),
}

/// Orientation of one edge along a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Traversal {
    pub head_left: bool,
    pub head_right: bool,
}

impl Traversal {
    /// `a -> b`
    pub const FORWARD: Traversal = Traversal { head_left: false, head_right: true };
    /// `a <- b`
    pub const BACKWARD: Traversal = Traversal { head_left: true, head_right: false };
    /// `a <-> b`
    pub const BIDIRECTED: Traversal = Traversal { head_left: true, head_right: true };

    pub fn flipped(self) -> Traversal {
        Traversal { head_left: self.head_right, head_right: self.head_left }
    }

    fn arrow(self) -> &'static str {
        match (self.head_left, self.head_right) {
            (false, true) => "->",
            (true, false) => "<-",
            _ => "<->",
        }
    }
}

/// A simple path. Ordered canonically: fewer edges first, then by node
/// labels, then by traversal flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Path {
    nodes: Vec<NodeId>,
    traversals: Vec<Traversal>,
}

impl Path {
    pub fn new(nodes: Vec<NodeId>, traversals: Vec<Traversal>) -> Result<Path, PathError> {
        if nodes.is_empty() {
            return Err(PathError::Malformed("a path needs at least one node".into()));
        }
        if traversals.len() + 1 != nodes.len() {
            return Err(PathError::Malformed(format!(
                "{} nodes but {} traversals",
                nodes.len(),
                traversals.len()
            )));
        }
        if traversals.iter().any(|t| !t.head_left && !t.head_right) {
            return Err(PathError::Malformed("undirected traversal".into()));
        }
        for (i, n) in nodes.iter().enumerate() {
            if nodes[..i].contains(n) {
                return Err(PathError::Malformed(format!("node `{n}` repeats")));
            }
        }
        Ok(Path { nodes, traversals })
    }

    pub(crate) fn from_indices(g: &Admg, nodes: &[usize], traversals: &[Traversal]) -> Path {
        Path {
            nodes: nodes.iter().map(|&i| g.label(i).clone()).collect(),
            traversals: traversals.to_vec(),
        }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn traversals(&self) -> &[Traversal] {
        &self.traversals
    }

    pub fn first(&self) -> &NodeId {
        &self.nodes[0]
    }

    pub fn last(&self) -> &NodeId {
        &self.nodes[self.nodes.len() - 1]
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.traversals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traversals.is_empty()
    }

    /// Collider status of the node at position `i`; endpoints are never colliders.
    pub fn is_collider(&self, i: usize) -> bool {
        i > 0 && i < self.nodes.len() - 1 && self.traversals[i - 1].head_right && self.traversals[i].head_left
    }

    pub fn interior(&self) -> impl Iterator<Item = (&NodeId, bool)> + '_ {
        let n = self.nodes.len();
        (1..n.saturating_sub(1)).map(move |i| (&self.nodes[i], self.is_collider(i)))
    }

    /// Every traversal points towards the last node.
    pub fn is_direct(&self) -> bool {
        !self.traversals.is_empty() && self.traversals.iter().all(|&t| t == Traversal::FORWARD)
    }

    pub fn reversed(&self) -> Path {
        Path {
            nodes: self.nodes.iter().rev().cloned().collect(),
            traversals: self.traversals.iter().rev().map(|t| t.flipped()).collect(),
        }
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.traversals
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                let (a, b) = (self.nodes[i].clone(), self.nodes[i + 1].clone());
                match (t.head_left, t.head_right) {
                    (false, true) => Edge::Directed(a, b),
                    (true, false) => Edge::Directed(b, a),
                    _ => Edge::bidirected(a, b),
                }
            })
            .collect()
    }

    /// Checks that every traversal is an edge of `g`.
    pub fn validate_in(&self, g: &Admg) -> Result<(), PathError> {
        for n in &self.nodes {
            if !g.contains(n) {
                return Err(GraphError::UnknownNode(n.clone()).into());
            }
        }
        match self.edges().into_iter().find(|e| !g.has_edge(e)) {
            Some(e) => Err(PathError::NotInGraph(e)),
            None => Ok(()),
        }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nodes
            .len()
            .cmp(&other.nodes.len())
            .then_with(|| self.nodes.cmp(&other.nodes))
            .then_with(|| self.traversals.cmp(&other.traversals))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.nodes[0])?;
        for (t, n) in self.traversals.iter().zip(&self.nodes[1..]) {
            write!(f, " {} {n}", t.arrow())?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = PathError;

    /// Parses `X -> Z <-> Y <- W`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut nodes = Vec::new();
        let mut traversals = Vec::new();
        let mut chars = s.chars().peekable();
        let mut expect_node = true;
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            let arrowish = |c: char| matches!(c, '<' | '-' | '>');
            let mut token = String::new();
            if arrowish(c) {
                while let Some(&c) = chars.peek().filter(|&&c| arrowish(c)) {
                    token.push(c);
                    chars.next();
                }
                if expect_node {
                    return Err(PathError::Malformed(format!("expected a node before `{token}`")));
                }
                traversals.push(match token.as_str() {
                    "->" => Traversal::FORWARD,
                    "<-" => Traversal::BACKWARD,
                    "<->" => Traversal::BIDIRECTED,
                    other => return Err(PathError::Malformed(format!("unknown arrow `{other}`"))),
                });
            } else {
                while let Some(&c) = chars.peek().filter(|&&c| !c.is_whitespace() && !arrowish(c)) {
                    token.push(c);
                    chars.next();
                }
                if !expect_node {
                    return Err(PathError::Malformed(format!("expected an arrow before `{token}`")));
                }
                nodes.push(NodeId::new(token).map_err(|e| PathError::Malformed(e.to_string()))?);
            }
            expect_node = !expect_node;
        }
        if expect_node {
            return Err(PathError::Malformed("path must end with a node".into()));
        }
        Path::new(nodes, traversals)
    }
}

impl TryFrom<String> for Path {
    type Error = PathError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Path> for String {
    fn from(p: Path) -> String {
        p.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DoorKind {
    Frontdoor,
    Backdoor,
}

/// Classification of a path relative to a source set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathClass {
    pub kind: DoorKind,
    pub direct: bool,
    pub proper: bool,
}

/// Front-door iff the first edge leaves the first node without an arrowhead
/// there. A single-node path counts as back-door.
pub fn classify_path(p: &Path, x_set: &NodeSet) -> PathClass {
    let kind = match p.traversals.first() {
        Some(t) if !t.head_left => DoorKind::Frontdoor,
        _ => DoorKind::Backdoor,
    };
    PathClass {
        kind,
        direct: p.is_direct(),
        proper: p.nodes[1..].iter().all(|n| !x_set.contains(n)),
    }
}

/// Interior non-colliders must avoid `cond`; interior colliders must be
/// ancestors of `cond`. Endpoints are unconstrained.
pub fn is_open(g: &Admg, p: &Path, cond: &NodeSet) -> Result<bool, PathError> {
    p.validate_in(g)?;
    let an = g.ancestors(cond)?;
    Ok(p.interior().all(|(n, collider)| if collider { an.contains(n) } else { !cond.contains(n) }))
}

fn check_disjoint(sets: &[&NodeSet]) -> Result<(), PathError> {
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if !a.is_disjoint(b) {
                return Err(PathError::SetsNotDisjoint);
            }
        }
    }
    Ok(())
}

/// All simple paths from `from` to `to` with at most `max_nodes` nodes, in
/// canonical order. Paths may pass through other members of `from` or `to`.
pub fn enumerate_paths(g: &Admg, from: &NodeSet, to: &NodeSet, max_nodes: usize) -> Result<Vec<Path>, PathError> {
    enumerate_paths_capped(g, from, to, max_nodes, DEFAULT_PATH_CAP)
}

pub fn enumerate_paths_capped(
    g: &Admg,
    from: &NodeSet,
    to: &NodeSet,
    max_nodes: usize,
    cap: usize,
) -> Result<Vec<Path>, PathError> {
    check_disjoint(&[from, to])?;
    let mut search = PathSearch::new(g, g.mask(from)?, g.mask(to)?);
    search.max_nodes = max_nodes;
    search.cap = cap;
    search.through_targets = true;
    search.all()
}

/// True iff no path between `x` and `y` is open given `z`.
///
/// Breadth-first reachability over (node, arrived-with-arrowhead) states; a
/// walk may leave `v` along an edge when `v` is a collider in `An(z)` or a
/// non-collider outside `z`.
pub fn d_separated(g: &Admg, x: &NodeSet, y: &NodeSet, z: &NodeSet) -> Result<bool, PathError> {
    check_disjoint(&[x, y, z])?;
    let (xm, ym, zm) = (g.mask(x)?, g.mask(y)?, g.mask(z)?);
    Ok(!reachable(g, &xm, &ym, &zm))
}

pub(crate) fn reachable(g: &Admg, x: &[bool], y: &[bool], z: &[bool]) -> bool {
    let an = g.ancestors_mask(z);
    let n = g.len();
    let mut seen = vec![[false; 2]; n];
    let mut queue = VecDeque::new();
    for v in (0..n).filter(|&v| x[v]) {
        for a in g.adjacent(v) {
            if !seen[a.node][a.head_there as usize] {
                seen[a.node][a.head_there as usize] = true;
                queue.push_back((a.node, a.head_there));
            }
        }
    }
    while let Some((v, arrived_head)) = queue.pop_front() {
        if y[v] {
            return true;
        }
        for a in g.adjacent(v) {
            let pass = if arrived_head && a.head_here { an[v] } else { !z[v] };
            if pass && !seen[a.node][a.head_there as usize] {
                seen[a.node][a.head_there as usize] = true;
                queue.push_back((a.node, a.head_there));
            }
        }
    }
    false
}

/// Canonical shortest path between `x` and `y` that is open given `z`, if any.
pub fn d_connecting_path(g: &Admg, x: &NodeSet, y: &NodeSet, z: &NodeSet) -> Result<Option<Path>, PathError> {
    check_disjoint(&[x, y, z])?;
    let mut search = PathSearch::new(g, g.mask(x)?, g.mask(y)?);
    search.open_given(g.mask(z)?);
    search.first()
}

/// Brute-force d-separation: enumerate every simple path and test openness.
pub fn d_separated_by_enumeration(g: &Admg, x: &NodeSet, y: &NodeSet, z: &NodeSet) -> Result<bool, PathError> {
    check_disjoint(&[x, y, z])?;
    for p in enumerate_paths(g, x, y, g.len())? {
        if is_open(g, &p, z)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::AdmgBuilder;

    fn set(labels: &[&str]) -> NodeSet {
        NodeSet::from_labels(labels)
    }

    fn p(s: &str) -> Path {
        s.parse().unwrap()
    }

    fn chain() -> Admg {
        AdmgBuilder::new().directed("X", "Z").directed("Z", "Y").build().unwrap()
    }

    #[test]
    fn enumerates_chain_and_identifiability_b() {
        let paths = enumerate_paths(&chain(), &set(&["X"]), &set(&["Y"]), 10).unwrap();
        assert_eq!(paths, vec![p("X -> Z -> Y")]);

        let g = AdmgBuilder::new()
            .directed("X", "Z")
            .directed("Z", "Y")
            .bidirected("X", "Y")
            .build()
            .unwrap();
        let paths = enumerate_paths(&g, &set(&["X"]), &set(&["Y"]), 10).unwrap();
        assert_eq!(paths, vec![p("X <-> Y"), p("X -> Z -> Y")]);

        let empty = Admg::new(vec!["X".into(), "Y".into()], vec![], vec![], vec![]).unwrap();
        assert!(enumerate_paths(&empty, &set(&["X"]), &set(&["Y"]), 10).unwrap().is_empty());
    }

    #[test]
    fn enumeration_respects_cap_and_length() {
        let g = AdmgBuilder::new()
            .directed("X", "A")
            .directed("A", "Y")
            .directed("X", "B")
            .directed("B", "Y")
            .build()
            .unwrap();
        assert_eq!(
            enumerate_paths_capped(&g, &set(&["X"]), &set(&["Y"]), 10, 1).unwrap_err(),
            PathError::LimitExceeded(1)
        );
        assert!(enumerate_paths(&g, &set(&["X"]), &set(&["Y"]), 2).unwrap().is_empty());
        assert_eq!(
            enumerate_paths(&g, &set(&["X"]), &set(&["X"]), 4).unwrap_err(),
            PathError::SetsNotDisjoint
        );
    }

    #[test]
    fn classification() {
        let c = classify_path(&p("X -> Z -> Y"), &set(&["X"]));
        assert_eq!(c, PathClass { kind: DoorKind::Frontdoor, direct: true, proper: true });
        let c = classify_path(&p("X <-> Y"), &set(&["X"]));
        assert_eq!(c.kind, DoorKind::Backdoor);
        assert!(!c.direct);
        let c = classify_path(&p("X1 <- X2 -> Z"), &set(&["X1", "X2"]));
        assert_eq!(c.kind, DoorKind::Backdoor);
        assert!(!c.proper);
    }

    #[test]
    fn openness() {
        let g = chain();
        assert!(!is_open(&g, &p("X -> Z -> Y"), &set(&["Z"])).unwrap());
        assert!(is_open(&g, &p("X -> Z -> Y"), &NodeSet::new()).unwrap());

        let collider = AdmgBuilder::new()
            .directed("X", "Z1")
            .directed("Y", "Z1")
            .directed("Z1", "Z2")
            .build()
            .unwrap();
        let path = p("X -> Z1 <- Y");
        assert!(!is_open(&collider, &path, &NodeSet::new()).unwrap());
        assert!(is_open(&collider, &path, &set(&["Z1"])).unwrap());
        assert!(is_open(&collider, &path, &set(&["Z2"])).unwrap());
        assert!(is_open(&collider, &p("X -> Z1"), &set(&["X", "Z1"])).unwrap());
        assert!(matches!(
            is_open(&collider, &p("X <- Z1"), &NodeSet::new()),
            Err(PathError::NotInGraph(_))
        ));
    }

    #[test]
    fn separation_basics() {
        let (x, y, z) = (set(&["X"]), set(&["Y"]), set(&["Z"]));
        let g = chain();
        assert!(d_separated(&g, &x, &y, &z).unwrap());
        assert!(!d_separated(&g, &x, &y, &NodeSet::new()).unwrap());

        let collider = AdmgBuilder::new().directed("X", "Z").directed("Y", "Z").build().unwrap();
        assert!(d_separated(&collider, &x, &y, &NodeSet::new()).unwrap());
        assert!(!d_separated(&collider, &x, &y, &z).unwrap());

        let fork = AdmgBuilder::new().directed("Z", "X").directed("Z", "Y").build().unwrap();
        assert!(d_separated(&fork, &x, &y, &z).unwrap());
        assert_eq!(
            d_separated(&fork, &x, &x, &z).unwrap_err(),
            PathError::SetsNotDisjoint
        );
    }

    #[test]
    fn connecting_witness_is_shortest() {
        let g = AdmgBuilder::new()
            .directed("X", "Z")
            .directed("Z", "Y")
            .bidirected("X", "Y")
            .build()
            .unwrap();
        let w = d_connecting_path(&g, &set(&["X"]), &set(&["Y"]), &set(&["Z"])).unwrap();
        assert_eq!(w, Some(p("X <-> Y")));
    }

    #[test]
    fn path_text_round_trip() {
        for s in ["X -> Z <-> Y <- W", "A", "A<->B"] {
            let path = p(s);
            assert_eq!(p(&path.to_string()), path);
        }
        assert!("X -> ".parse::<Path>().is_err());
        assert!("X => Y".parse::<Path>().is_err());
        assert!("X -> Y -> X".parse::<Path>().is_err());
        let r = p("X -> Z <-> Y").reversed();
        assert_eq!(r, p("Y <-> Z <- X"));
    }
}

//! Acyclic directed mixed graphs (ADMGs) over labelled nodes.
//!
//! A graph carries directed edges `a -> b` and bidirected edges `a <-> b`, and
//! marks a subset of its nodes as latent. A DAG is simply an [`Admg`] without
//! bidirected edges. Graphs are immutable once built: every operation that
//! changes structure ([`Admg::mutilate`], [`Admg::edge_subgraph`]) returns a
//! new value.
//!
//! Nodes are always iterated in sorted label order, so everything derived
//! from a graph (edge lists, path enumerations, reports) is reproducible.

mod format;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use format::ParseError;

/// Errors raised while building or querying a graph.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("directed cycle through `{0}`")]
    CycleDetected(NodeId),
    #[error("edge endpoint `{0}` is not a node of the graph")]
    DanglingEndpoint(NodeId),
    #[error("duplicate node label `{0}`")]
    DuplicateLabel(NodeId),
    #[error("invalid node label `{0}`")]
    InvalidLabel(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(NodeId),
    #[error("unknown node `{0}`")]
    UnknownNode(NodeId),
    #[error("edge `{0}` is not in the graph")]
    UnknownEdge(Edge),
}

/// Label of a node. Unique within a graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    /// Creates a validated label: non-empty, made of alphanumerics, `_`, `.` or `'`.
    pub fn new(label: impl Into<String>) -> Result<Self, GraphError> {
        let label = label.into();
        if is_valid_label(&label) {
            Ok(NodeId(label))
        } else {
            Err(GraphError::InvalidLabel(label))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_valid_label(label: &str) -> bool {
    !label.is_empty()
        && label
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '.' || c == '\'')
}

/// Unchecked conversion; labels are validated when a graph is built.
impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId(s.to_string())
    }
}

impl From<String> for NodeId {
    fn from(s: String) -> Self {
        NodeId(s)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// An ordered set of node labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet(BTreeSet<NodeId>);

impl NodeSet {
    pub fn new() -> Self {
        NodeSet(BTreeSet::new())
    }

    pub fn from_labels<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        labels.into_iter().map(|s| NodeId::from(s.as_ref())).collect()
    }

    /// Parses a comma-separated label list such as `"Z1,Z2"`. Blank input is the empty set.
    pub fn parse_list(text: &str) -> Result<Self, GraphError> {
        let mut set = NodeSet::new();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            set.insert(NodeId::new(part)?);
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, node: &NodeId) -> bool {
        self.0.contains(node)
    }

    pub fn insert(&mut self, node: NodeId) -> bool {
        self.0.insert(node)
    }

    pub fn iter(&self) -> impl Iterator<Item = &NodeId> + '_ {
        self.0.iter()
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<NodeId> for NodeSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        NodeSet(iter.into_iter().collect())
    }
}

impl<'a> FromIterator<&'a NodeId> for NodeSet {
    fn from_iter<I: IntoIterator<Item = &'a NodeId>>(iter: I) -> Self {
        NodeSet(iter.into_iter().cloned().collect())
    }
}

impl IntoIterator for NodeSet {
    type Item = NodeId;
    type IntoIter = std::collections::btree_set::IntoIter<NodeId>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = &'a NodeId;
    type IntoIter = std::collections::btree_set::Iter<'a, NodeId>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("}")
    }
}

/// A single edge. Bidirected edges are stored with their endpoints in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Edge {
    Directed(NodeId, NodeId),
    Bidirected(NodeId, NodeId),
}

impl Edge {
    pub fn directed(from: impl Into<NodeId>, to: impl Into<NodeId>) -> Self {
        Edge::Directed(from.into(), to.into())
    }

    pub fn bidirected(a: impl Into<NodeId>, b: impl Into<NodeId>) -> Self {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            Edge::Bidirected(a, b)
        } else {
            Edge::Bidirected(b, a)
        }
    }

    pub fn endpoints(&self) -> (&NodeId, &NodeId) {
        match self {
            Edge::Directed(a, b) | Edge::Bidirected(a, b) => (a, b),
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edge::Directed(a, b) => write!(f, "{a} -> {b}"),
            Edge::Bidirected(a, b) => write!(f, "{a} <-> {b}"),
        }
    }
}

/// Which relatives [`Admg::relatives`] should collect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Parents,
    Children,
    /// Reflexive: every node is its own ancestor.
    Ancestors,
    /// Reflexive: every node is its own descendant.
    Descendants,
}

/// One step out of a node: the neighbour index and whether the edge carries an
/// arrowhead at the near end and at the far end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Adjacent {
    pub node: usize,
    pub head_here: bool,
    pub head_there: bool,
}

/// Acyclic directed mixed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admg {
    labels: Vec<NodeId>,
    index: BTreeMap<NodeId, usize>,
    latent: Vec<bool>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    spouses: Vec<Vec<usize>>,
    adjacency: Vec<Vec<Adjacent>>,
}

impl Admg {
    /// Builds and validates a graph.
    ///
    /// Duplicate edges collapse; `latent` must be a subset of `nodes`.
    pub fn new<N, L, D, B>(nodes: N, latent: L, directed: D, bidirected: B) -> Result<Self, GraphError>
    where
        N: IntoIterator<Item = NodeId>,
        L: IntoIterator<Item = NodeId>,
        D: IntoIterator<Item = (NodeId, NodeId)>,
        B: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut labels = Vec::new();
        let mut seen = BTreeSet::new();
        for node in nodes {
            if !is_valid_label(node.as_str()) {
                return Err(GraphError::InvalidLabel(node.0));
            }
            if !seen.insert(node.clone()) {
                return Err(GraphError::DuplicateLabel(node));
            }
            labels.push(node);
        }
        labels.sort();
        let index: BTreeMap<NodeId, usize> =
            labels.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let lookup = |n: &NodeId| {
            index
                .get(n)
                .copied()
                .ok_or_else(|| GraphError::DanglingEndpoint(n.clone()))
        };

        let mut latent_mask = vec![false; labels.len()];
        for node in latent {
            let i = index
                .get(&node)
                .copied()
                .ok_or(GraphError::UnknownNode(node))?;
            latent_mask[i] = true;
        }

        let mut dir = BTreeSet::new();
        for (a, b) in directed {
            let (i, j) = (lookup(&a)?, lookup(&b)?);
            if i == j {
                return Err(GraphError::SelfLoop(a));
            }
            dir.insert((i, j));
        }
        let mut bi = BTreeSet::new();
        for (a, b) in bidirected {
            let (i, j) = (lookup(&a)?, lookup(&b)?);
            if i == j {
                return Err(GraphError::SelfLoop(a));
            }
            bi.insert((i.min(j), i.max(j)));
        }

        let g = Admg::from_parts(labels, index, latent_mask, &dir, &bi);
        if let Some(v) = g.find_cycle_node() {
            return Err(GraphError::CycleDetected(g.labels[v].clone()));
        }
        Ok(g)
    }

    /// Assembles a graph from already validated index-level parts.
    fn from_parts(
        labels: Vec<NodeId>,
        index: BTreeMap<NodeId, usize>,
        latent: Vec<bool>,
        directed: &BTreeSet<(usize, usize)>,
        bidirected: &BTreeSet<(usize, usize)>,
    ) -> Self {
        let n = labels.len();
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        let mut spouses = vec![Vec::new(); n];
        for &(a, b) in directed {
            children[a].push(b);
            parents[b].push(a);
        }
        for &(a, b) in bidirected {
            spouses[a].push(b);
            spouses[b].push(a);
        }
        let mut adjacency = vec![Vec::new(); n];
        for v in 0..n {
            parents[v].sort_unstable();
            children[v].sort_unstable();
            spouses[v].sort_unstable();
            let adj = &mut adjacency[v];
            adj.extend(parents[v].iter().map(|&w| Adjacent { node: w, head_here: true, head_there: false }));
            adj.extend(children[v].iter().map(|&w| Adjacent { node: w, head_here: false, head_there: true }));
            adj.extend(spouses[v].iter().map(|&w| Adjacent { node: w, head_here: true, head_there: true }));
            adj.sort_unstable();
        }
        Admg { labels, index, latent, parents, children, spouses, adjacency }
    }

    fn with_edges(&self, directed: &BTreeSet<(usize, usize)>, bidirected: &BTreeSet<(usize, usize)>) -> Self {
        Admg::from_parts(self.labels.clone(), self.index.clone(), self.latent.clone(), directed, bidirected)
    }

    fn find_cycle_node(&self) -> Option<usize> {
        let order = self.topological_indices();
        if order.len() == self.len() {
            return None;
        }
        let placed: BTreeSet<usize> = order.into_iter().collect();
        (0..self.len()).find(|v| !placed.contains(v))
    }

    /// Kahn's algorithm, always taking the smallest available index.
    fn topological_indices(&self) -> Vec<usize> {
        let n = self.len();
        let mut indegree: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &c in &self.children[v] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        order
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Nodes in canonical (sorted) order.
    pub fn nodes(&self) -> impl Iterator<Item = &NodeId> + '_ {
        self.labels.iter()
    }

    pub fn node_set(&self) -> NodeSet {
        self.labels.iter().collect()
    }

    pub fn contains(&self, node: &NodeId) -> bool {
        self.index.contains_key(node)
    }

    pub fn is_latent(&self, node: &NodeId) -> bool {
        self.index.get(node).is_some_and(|&i| self.latent[i])
    }

    pub fn latent_nodes(&self) -> NodeSet {
        self.labels.iter().zip(&self.latent).filter(|(_, &l)| l).map(|(n, _)| n).collect()
    }

    pub fn observed_nodes(&self) -> NodeSet {
        self.labels.iter().zip(&self.latent).filter(|(_, &l)| !l).map(|(n, _)| n).collect()
    }

    /// Directed edges as `(tail, head)` pairs in canonical order.
    pub fn directed_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for (a, cs) in self.children.iter().enumerate() {
            for &b in cs {
                out.push((self.labels[a].clone(), self.labels[b].clone()));
            }
        }
        out
    }

    /// Bidirected edges with endpoints in sorted order.
    pub fn bidirected_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for (a, ss) in self.spouses.iter().enumerate() {
            for &b in ss.iter().filter(|&&b| b > a) {
                out.push((self.labels[a].clone(), self.labels[b].clone()));
            }
        }
        out
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .directed_edges()
            .into_iter()
            .map(|(a, b)| Edge::Directed(a, b))
            .collect();
        out.extend(self.bidirected_edges().into_iter().map(|(a, b)| Edge::Bidirected(a, b)));
        out
    }

    pub fn has_edge(&self, edge: &Edge) -> bool {
        match edge {
            Edge::Directed(a, b) => match (self.index.get(a), self.index.get(b)) {
                (Some(&i), Some(&j)) => self.children[i].binary_search(&j).is_ok(),
                _ => false,
            },
            Edge::Bidirected(a, b) => match (self.index.get(a), self.index.get(b)) {
                (Some(&i), Some(&j)) => self.spouses[i].binary_search(&j).is_ok(),
                _ => false,
            },
        }
    }

    pub fn is_dag(&self) -> bool {
        self.spouses.iter().all(Vec::is_empty)
    }

    /// Topological order of the directed part, smallest label first among ties.
    pub fn topological_order(&self) -> Vec<NodeId> {
        self.topological_indices().into_iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn relatives(&self, set: &NodeSet, kind: Relation) -> Result<NodeSet, GraphError> {
        let mask = self.mask(set)?;
        let out = match kind {
            Relation::Parents => self.step_mask(&mask, &self.parents),
            Relation::Children => self.step_mask(&mask, &self.children),
            Relation::Ancestors => self.ancestors_mask(&mask),
            Relation::Descendants => self.descendants_mask(&mask),
        };
        Ok(self.set_from_mask(&out))
    }

    pub fn parents(&self, set: &NodeSet) -> Result<NodeSet, GraphError> {
        self.relatives(set, Relation::Parents)
    }

    pub fn children(&self, set: &NodeSet) -> Result<NodeSet, GraphError> {
        self.relatives(set, Relation::Children)
    }

    pub fn ancestors(&self, set: &NodeSet) -> Result<NodeSet, GraphError> {
        self.relatives(set, Relation::Ancestors)
    }

    pub fn descendants(&self, set: &NodeSet) -> Result<NodeSet, GraphError> {
        self.relatives(set, Relation::Descendants)
    }

    /// Removes directed edges into `cut_incoming`, directed edges out of
    /// `cut_outgoing`, and every bidirected edge touching `cut_incoming`
    /// (a bidirected edge has an arrowhead at both of its endpoints).
    pub fn mutilate(&self, cut_incoming: &NodeSet, cut_outgoing: &NodeSet) -> Result<Admg, GraphError> {
        let inc = self.mask(cut_incoming)?;
        let out = self.mask(cut_outgoing)?;
        Ok(self.mutilate_mask(&inc, &out))
    }

    pub(crate) fn mutilate_mask(&self, inc: &[bool], out: &[bool]) -> Admg {
        let mut dir = BTreeSet::new();
        for (a, cs) in self.children.iter().enumerate() {
            for &b in cs {
                if !inc[b] && !out[a] {
                    dir.insert((a, b));
                }
            }
        }
        let mut bi = BTreeSet::new();
        for (a, ss) in self.spouses.iter().enumerate() {
            for &b in ss.iter().filter(|&&b| b > a) {
                if !inc[a] && !inc[b] {
                    bi.insert((a, b));
                }
            }
        }
        self.with_edges(&dir, &bi)
    }

    /// Keeps only the listed edges; the node set is unchanged.
    pub fn edge_subgraph<'a, I>(&self, keep: I) -> Result<Admg, GraphError>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let mut dir = BTreeSet::new();
        let mut bi = BTreeSet::new();
        for edge in keep {
            if !self.has_edge(edge) {
                return Err(GraphError::UnknownEdge(edge.clone()));
            }
            match edge {
                Edge::Directed(a, b) => {
                    dir.insert((self.index[a], self.index[b]));
                }
                Edge::Bidirected(a, b) => {
                    let (i, j) = (self.index[a], self.index[b]);
                    bi.insert((i.min(j), i.max(j)));
                }
            }
        }
        Ok(self.with_edges(&dir, &bi))
    }

    /// Same structure with the latent marking replaced.
    pub fn with_latent(&self, latent: &NodeSet) -> Result<Admg, GraphError> {
        let mut g = self.clone();
        g.latent = self.mask(latent)?;
        Ok(g)
    }

    // ---- index-level helpers shared with the algorithm modules ----

    pub(crate) fn idx(&self, node: &NodeId) -> Result<usize, GraphError> {
        self.index.get(node).copied().ok_or_else(|| GraphError::UnknownNode(node.clone()))
    }

    pub(crate) fn label(&self, i: usize) -> &NodeId {
        &self.labels[i]
    }

    pub(crate) fn parents_of(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub(crate) fn children_of(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub(crate) fn spouses_of(&self, i: usize) -> &[usize] {
        &self.spouses[i]
    }

    pub(crate) fn adjacent(&self, i: usize) -> &[Adjacent] {
        &self.adjacency[i]
    }

    pub(crate) fn mask(&self, set: &NodeSet) -> Result<Vec<bool>, GraphError> {
        let mut m = vec![false; self.len()];
        for n in set {
            m[self.idx(n)?] = true;
        }
        Ok(m)
    }

    pub(crate) fn set_from_mask(&self, mask: &[bool]) -> NodeSet {
        mask.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| self.labels[i].clone())
            .collect()
    }

    fn step_mask(&self, mask: &[bool], rel: &[Vec<usize>]) -> Vec<bool> {
        let mut out = vec![false; self.len()];
        for (v, _) in mask.iter().enumerate().filter(|(_, &b)| b) {
            for &w in &rel[v] {
                out[w] = true;
            }
        }
        out
    }

    fn closure_mask(&self, mask: &[bool], rel: &[Vec<usize>]) -> Vec<bool> {
        let mut out = mask.to_vec();
        let mut queue: VecDeque<usize> = (0..self.len()).filter(|&v| mask[v]).collect();
        while let Some(v) = queue.pop_front() {
            for &w in &rel[v] {
                if !out[w] {
                    out[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out
    }

    pub(crate) fn ancestors_mask(&self, mask: &[bool]) -> Vec<bool> {
        self.closure_mask(mask, &self.parents)
    }

    pub(crate) fn descendants_mask(&self, mask: &[bool]) -> Vec<bool> {
        self.closure_mask(mask, &self.children)
    }
}

impl fmt::Display for Admg {
    /// Canonical text form: node declarations, then directed edges, then bidirected edges.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.labels.iter().enumerate() {
            let kw = if self.latent[i] { "latent" } else { "node" };
            writeln!(f, "{kw} {n}")?;
        }
        for (a, b) in self.directed_edges() {
            writeln!(f, "{a} -> {b}")?;
        }
        for (a, b) in self.bidirected_edges() {
            writeln!(f, "{a} <-> {b}")?;
        }
        Ok(())
    }
}

impl FromStr for Admg {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        format::parse_graph(s)
    }
}

/// Serialized as its canonical text form.
impl Serialize for Admg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Admg {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Incremental construction; nodes mentioned by edges are declared implicitly.
#[derive(Clone, Debug, Default)]
pub struct AdmgBuilder {
    nodes: Vec<NodeId>,
    seen: BTreeSet<NodeId>,
    latent: Vec<NodeId>,
    directed: Vec<(NodeId, NodeId)>,
    bidirected: Vec<(NodeId, NodeId)>,
}

impl AdmgBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn declare(&mut self, node: NodeId) {
        if self.seen.insert(node.clone()) {
            self.nodes.push(node);
        }
    }

    pub fn node(mut self, label: &str) -> Self {
        self.declare(label.into());
        self
    }

    pub fn nodes<'a>(mut self, labels: impl IntoIterator<Item = &'a str>) -> Self {
        for l in labels {
            self.declare(l.into());
        }
        self
    }

    pub fn latent(mut self, label: &str) -> Self {
        self.declare(label.into());
        self.latent.push(label.into());
        self
    }

    pub fn directed(mut self, from: &str, to: &str) -> Self {
        self.declare(from.into());
        self.declare(to.into());
        self.directed.push((from.into(), to.into()));
        self
    }

    pub fn bidirected(mut self, a: &str, b: &str) -> Self {
        self.declare(a.into());
        self.declare(b.into());
        self.bidirected.push((a.into(), b.into()));
        self
    }

    pub fn build(self) -> Result<Admg, GraphError> {
        Admg::new(self.nodes, self.latent, self.directed, self.bidirected)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[&str]) -> NodeSet {
        NodeSet::from_labels(labels)
    }

    fn fig_b() -> Admg {
        AdmgBuilder::new()
            .directed("X", "Z")
            .directed("Z", "Y")
            .bidirected("X", "Y")
            .build()
            .unwrap()
    }

    #[test]
    fn builds_identifiability_b() {
        let g = fig_b();
        assert_eq!(g.len(), 3);
        assert_eq!(g.nodes().map(NodeId::as_str).collect::<Vec<_>>(), ["X", "Y", "Z"]);
        assert_eq!(g.directed_edges().len(), 2);
        assert_eq!(g.bidirected_edges(), vec![("X".into(), "Y".into())]);
        assert!(!g.is_dag());
    }

    #[test]
    fn edgeless_graph_is_acyclic() {
        let g = Admg::new(
            vec!["A".into(), "B".into()],
            Vec::new(),
            Vec::new(),
            Vec::new(),
        )
        .unwrap();
        assert_eq!(g.topological_order().len(), 2);
        assert!(g.edges().is_empty());
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = AdmgBuilder::new().directed("X", "Z").directed("Z", "X").build().unwrap_err();
        assert!(matches!(err, GraphError::CycleDetected(_)));
    }

    #[test]
    fn construction_errors() {
        let dup = Admg::new(vec!["A".into(), "A".into()], vec![], vec![], vec![]);
        assert_eq!(dup.unwrap_err(), GraphError::DuplicateLabel("A".into()));
        let dangling = Admg::new(vec!["A".into()], vec![], vec![("A".into(), "B".into())], vec![]);
        assert_eq!(dangling.unwrap_err(), GraphError::DanglingEndpoint("B".into()));
        let selfloop = AdmgBuilder::new().bidirected("A", "A").build();
        assert_eq!(selfloop.unwrap_err(), GraphError::SelfLoop("A".into()));
        let bad = Admg::new(vec!["".into()], vec![], vec![], vec![]);
        assert!(matches!(bad.unwrap_err(), GraphError::InvalidLabel(_)));
    }

    #[test]
    fn relatives_follow_directed_edges_only() {
        let chain = AdmgBuilder::new().directed("X", "Z").directed("Z", "Y").build().unwrap();
        assert_eq!(chain.ancestors(&set(&["Y"])).unwrap(), set(&["X", "Y", "Z"]));
        assert_eq!(chain.descendants(&set(&["Z"])).unwrap(), set(&["Y", "Z"]));

        let g = fig_b();
        assert_eq!(g.parents(&set(&["Y"])).unwrap(), set(&["Z"]));
        assert_eq!(g.children(&set(&["X"])).unwrap(), set(&["Z"]));
        for kind in [Relation::Parents, Relation::Children, Relation::Ancestors, Relation::Descendants] {
            assert!(g.relatives(&NodeSet::new(), kind).unwrap().is_empty());
        }
        assert_eq!(
            g.ancestors(&set(&["Q"])).unwrap_err(),
            GraphError::UnknownNode("Q".into())
        );
    }

    #[test]
    fn mutilation_drops_bidirected_edges_into_cut_nodes() {
        let g = fig_b();
        let m = g.mutilate(&set(&["X"]), &NodeSet::new()).unwrap();
        assert!(m.bidirected_edges().is_empty());
        assert_eq!(m.directed_edges(), g.directed_edges());
        assert_eq!(g.mutilate(&NodeSet::new(), &NodeSet::new()).unwrap(), g);

        let single = AdmgBuilder::new().directed("X", "Z").build().unwrap();
        let cut = single.mutilate(&NodeSet::new(), &set(&["X"])).unwrap();
        assert!(cut.edges().is_empty());
        assert_eq!(cut.len(), 2);
    }

    #[test]
    fn edge_subgraph_keeps_listed_edges() {
        let g = AdmgBuilder::new()
            .directed("X", "Z1")
            .directed("Z1", "Y")
            .directed("Z1", "Z2")
            .directed("Z2", "Y")
            .bidirected("Z1", "Z2")
            .bidirected("X", "Y")
            .build()
            .unwrap();
        let keep = [Edge::directed("X", "Z1"), Edge::directed("Z1", "Y")];
        let sub = g.edge_subgraph(&keep).unwrap();
        assert_eq!(sub.edges(), keep.to_vec());
        assert_eq!(sub.len(), g.len());
        assert_eq!(g.edge_subgraph(&g.edges()).unwrap(), g);
        assert!(g.edge_subgraph(&[]).unwrap().edges().is_empty());
        let missing = Edge::directed("Y", "X");
        assert_eq!(
            g.edge_subgraph(std::slice::from_ref(&missing)).unwrap_err(),
            GraphError::UnknownEdge(missing)
        );
    }

    #[test]
    fn node_set_list_parsing() {
        assert_eq!(NodeSet::parse_list("Z1, Z2").unwrap(), set(&["Z1", "Z2"]));
        assert!(NodeSet::parse_list("").unwrap().is_empty());
        assert!(NodeSet::parse_list("A,B-C").is_err());
    }
}

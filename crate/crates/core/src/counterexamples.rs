//! Constructive counterexamples showing that the front-door functional fails
//! whenever a proper front-door path from x to y is left open by z.
//!
//! * Pattern (a), a direct edge or direct path: noisy copies along the path.
//! * Patterns (b) and (c): fair coins `U_0..U_k` with each `Z_i` uniform over
//!   the multiset `[0, 1, U_{i-1}, U_i]`.
//! * Pre-images of (b) and (c) in a larger graph: copier chains that transmit
//!   their parent with probability `n/(n+1)`, giving a strictly positive model
//!   that converges to the chain model as `n` grows.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::criteria::{Pattern, Query};
use crate::graph::{Admg, AdmgBuilder, GraphError, NodeId, NodeSet};
use crate::prob::{
    frontdoor_functional, full_joint, intervene, observational_joint, Assignment, Cpt, JointTable, ProbError, Scalar,
};
use crate::{Joint, Model, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CounterexampleError {
    #[error("chain length k must be at least 1")]
    InvalidK,
    #[error("path length must be at least 1")]
    InvalidLength,
    #[error("copy probability must lie in [0, 1] and differ from 1/2")]
    DegenerateCopy,
    #[error("expected {expected} z values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid pre-image spec: {0}")]
    InvalidSpec(String),
    #[error("target graph does not contain the model's graph: {0}")]
    NotASupergraph(String),
    #[error(transparent)]
    Prob(#[from] ProbError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

type Result<T> = std::result::Result<T, CounterexampleError>;

fn r(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

/// `P(Z_i = z | U_{i-1} = a, U_i = b)` as 2×2 matrices indexed `[a][b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrices {
    pub m0: [[Rational; 2]; 2],
    pub m1: [[Rational; 2]; 2],
}

impl TransitionMatrices {
    pub fn standard() -> Self {
        let m0 = [[r(3, 4), r(1, 2)], [r(1, 2), r(1, 4)]];
        let m1 = [[r(1, 4), r(1, 2)], [r(1, 2), r(3, 4)]];
        TransitionMatrices { m0, m1 }
    }

    pub fn matrix(&self, z: u8) -> &[[Rational; 2]; 2] {
        if z == 0 {
            &self.m0
        } else {
            &self.m1
        }
    }

    pub fn det(m: &[[Rational; 2]; 2]) -> Rational {
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }
}

/// `(3 - a - b) / 4`: the chance that a uniform draw from `[0, 1, a, b]` is 0.
fn multiset_row(a: usize, b: usize) -> Vec<Rational> {
    let p0 = r(3 - a as i64 - b as i64, 4);
    let p1 = Rational::one() - &p0;
    vec![p0, p1]
}

fn u_label(i: usize, k: usize, pattern: Pattern) -> String {
    match (i, pattern) {
        (0, _) => "X".into(),
        (i, Pattern::B) if i == k => "Y".into(),
        (i, _) => format!("U{i}"),
    }
}

fn check_chain_pattern(pattern: Pattern) -> Result<()> {
    if pattern == Pattern::A {
        return Err(CounterexampleError::InvalidSpec(
            "pattern a uses direct_path_counterexample".into(),
        ));
    }
    Ok(())
}

/// The base model on pattern (b) or (c) with `k` mediators `Z1..Zk`.
///
/// In pattern (c) the last coin `U_k` is latent and `Y` copies it exactly.
pub fn chain_model(k: usize, pattern: Pattern) -> Result<Model> {
    preimage_model(&PreimageSpec::bare(k, pattern)?, Rational::one())
}

pub fn chain_query(k: usize) -> Query {
    let z: Vec<String> = (1..=k).map(|i| format!("Z{i}")).collect();
    Query::new(NodeSet::from_labels(["X"]), NodeSet::from_labels(["Y"]), NodeSet::from_labels(&z))
}

/// `2^{-(k+1)} e_a^T M_{z_1} ... M_{z_k} e_b`.
pub fn matrix_joint(k: usize, a: u8, b: u8, z: &[u8]) -> Result<Rational> {
    if k == 0 {
        return Err(CounterexampleError::InvalidK);
    }
    if z.len() != k {
        return Err(CounterexampleError::LengthMismatch { expected: k, got: z.len() });
    }
    let tm = TransitionMatrices::standard();
    let mut row = [Rational::zero(), Rational::zero()];
    row[a as usize] = Rational::one();
    for &zi in z {
        let m = tm.matrix(zi);
        row = [
            &row[0] * &m[0][0] + &row[1] * &m[1][0],
            &row[0] * &m[0][1] + &row[1] * &m[1][1],
        ];
    }
    Ok(row[b as usize].clone() / Rational::from_integer((1u64 << (k + 1)).into()))
}

/// Functional value, oracle value and their difference at one `(x*, y)` cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub functional: Rational,
    pub oracle: Rational,
    pub gap: Rational,
    pub positive: bool,
}

impl GapReport {
    pub fn mismatch(&self) -> bool {
        !self.gap.is_zero()
    }
}

/// Evaluates the front-door functional and the interventional oracle of `m`
/// at `do(x*)` and the outcome cell `y`.
pub fn frontdoor_vs_oracle(m: &Model, q: &Query, xstar: &Assignment, y: &Assignment) -> Result<GapReport> {
    let j = observational_joint(m)?;
    let functional = frontdoor_functional(&j, q, xstar)?.at(y)?.clone();
    let oracle = intervene(m, xstar)?.marginal(&q.y)?.at(y)?.clone();
    Ok(GapReport { gap: &functional - &oracle, functional, oracle, positive: j.is_strictly_positive() })
}

fn zero_at(label: &str) -> Assignment {
    [(NodeId::from(label), 0)].into_iter().collect()
}

/// `S - P_x(y)` at `x* = 0, y = 0` on the pattern (b) chain model.
pub fn frontdoor_gap(k: usize) -> Result<Rational> {
    let m = chain_model(k, Pattern::B)?;
    Ok(frontdoor_vs_oracle(&m, &chain_query(k), &zero_at("X"), &zero_at("Y"))?.gap)
}

fn copy_cpt(var: &str, parent: &str, keep: &Rational) -> Cpt<Rational> {
    let flip = Rational::one() - keep;
    Cpt::tabulate(var, &["0", "1"], &[(parent, 2)], |pv| {
        if pv[0] == 0 {
            vec![keep.clone(), flip.clone()]
        } else {
            vec![flip.clone(), keep.clone()]
        }
    })
}

/// A direct path `X -> W1 -> ... -> Y` of noisy copies with copy probability 3/4.
pub fn direct_path_counterexample(length: usize) -> Result<(Model, Query)> {
    direct_path_counterexample_with(length, r(3, 4))
}

pub fn direct_path_counterexample_with(length: usize, copy: Rational) -> Result<(Model, Query)> {
    if length == 0 {
        return Err(CounterexampleError::InvalidLength);
    }
    if copy < Rational::zero() || copy > Rational::one() || copy == r(1, 2) {
        return Err(CounterexampleError::DegenerateCopy);
    }
    let labels: Vec<String> = (0..=length)
        .map(|i| match i {
            0 => "X".to_string(),
            i if i == length => "Y".to_string(),
            i => format!("W{i}"),
        })
        .collect();
    let mut b = AdmgBuilder::new();
    for w in labels.windows(2) {
        b = b.directed(&w[0], &w[1]);
    }
    let mut cpts = vec![Cpt::binary_root("X", r(1, 2))];
    for w in labels.windows(2) {
        cpts.push(copy_cpt(&w[1], &w[0], &copy));
    }
    let m = Model::new(b.build()?, cpts)?;
    Ok((m, Query::new(NodeSet::from_labels(["X"]), NodeSet::from_labels(["Y"]), NodeSet::new())))
}

/// Shape of a pre-image of pattern (b) or (c).
///
/// Each `Z_i` hangs below a chain of `t_chain_lengths[i-1]` pair-copiers `T`,
/// fed by an S-copier chain from `U_{i-1}` (left) and one from `U_i` (right)
/// with lengths `s_chain_lengths[i-1]`. In pattern (c), `Y` sits at the end of
/// a copier chain of `y_chain_length` nodes below the latent `U_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageSpec {
    pub k: usize,
    pub pattern: Pattern,
    pub s_chain_lengths: Vec<(usize, usize)>,
    pub t_chain_lengths: Vec<usize>,
    pub y_chain_length: usize,
}

impl PreimageSpec {
    /// All chains empty: the pattern graph itself.
    pub fn bare(k: usize, pattern: Pattern) -> Result<Self> {
        Self::uniform(k, pattern, 0, 0)
    }

    /// Every S chain of length `s`, every T chain of length `t`, and a
    /// Y chain of length `s` in pattern (c).
    pub fn uniform(k: usize, pattern: Pattern, s: usize, t: usize) -> Result<Self> {
        let spec = PreimageSpec {
            k,
            pattern,
            s_chain_lengths: vec![(s, s); k],
            t_chain_lengths: vec![t; k],
            y_chain_length: if pattern == Pattern::C { s } else { 0 },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(CounterexampleError::InvalidK);
        }
        check_chain_pattern(self.pattern)?;
        if self.s_chain_lengths.len() != self.k || self.t_chain_lengths.len() != self.k {
            return Err(CounterexampleError::InvalidSpec(format!(
                "need {} S and T chain lengths",
                self.k
            )));
        }
        if self.pattern == Pattern::B && self.y_chain_length != 0 {
            return Err(CounterexampleError::InvalidSpec("pattern b has no Y chain".into()));
        }
        Ok(())
    }

    pub fn query(&self) -> Query {
        chain_query(self.k)
    }

    /// Number of S copiers, counting the Y chain and, in pattern (c), `Y` itself.
    pub fn s_count(&self) -> usize {
        let sides: usize = self.s_chain_lengths.iter().map(|(l, r)| l + r).sum();
        sides + if self.pattern == Pattern::C { self.y_chain_length + 1 } else { 0 }
    }

    pub fn t_count(&self) -> usize {
        self.t_chain_lengths.iter().sum()
    }
}

/// Structural layout shared by the graph and model builders.
struct Layout {
    nodes: Vec<Node>,
    latent: Vec<String>,
}

enum Kind {
    Coin,
    /// Binary copier of a binary parent.
    Copier,
    /// Pair copier; parents are either two binary nodes or one pair node.
    Pair,
    /// Multiset rule over two binary parents or one pair parent.
    Mediator,
}

struct Node {
    label: String,
    kind: Kind,
    parents: Vec<String>,
}

fn layout(spec: &PreimageSpec) -> Result<Layout> {
    spec.validate()?;
    let k = spec.k;
    let mut nodes = Vec::new();
    let mut latent = Vec::new();
    for i in 0..=k {
        let label = u_label(i, k, spec.pattern);
        if label.starts_with('U') {
            latent.push(label.clone());
        }
        nodes.push(Node { label, kind: Kind::Coin, parents: vec![] });
    }
    let chain = |nodes: &mut Vec<Node>, latent: &mut Vec<String>, from: String, prefix: &str, len: usize| {
        let mut last = from;
        for j in 1..=len {
            let label = format!("{prefix}{j}");
            latent.push(label.clone());
            nodes.push(Node { label: label.clone(), kind: Kind::Copier, parents: vec![last] });
            last = label;
        }
        last
    };
    for i in 1..=k {
        let (sl, sr) = spec.s_chain_lengths[i - 1];
        let left = chain(&mut nodes, &mut latent, u_label(i - 1, k, spec.pattern), &format!("S{i}L"), sl);
        let right = chain(&mut nodes, &mut latent, u_label(i, k, spec.pattern), &format!("S{i}R"), sr);
        let mut parents = vec![left, right];
        for j in 1..=spec.t_chain_lengths[i - 1] {
            let label = format!("T{i}_{j}");
            latent.push(label.clone());
            nodes.push(Node { label: label.clone(), kind: Kind::Pair, parents });
            parents = vec![label];
        }
        nodes.push(Node { label: format!("Z{i}"), kind: Kind::Mediator, parents });
    }
    if spec.pattern == Pattern::C {
        let last = chain(&mut nodes, &mut latent, u_label(k, k, spec.pattern), "SY", spec.y_chain_length);
        nodes.push(Node { label: "Y".into(), kind: Kind::Copier, parents: vec![last] });
    }
    Ok(Layout { nodes, latent })
}

/// The pre-image DAG; observed nodes are `X`, `Y` and `Z1..Zk`.
pub fn preimage_graph(spec: &PreimageSpec) -> Result<Admg> {
    let l = layout(spec)?;
    let mut b = AdmgBuilder::new();
    for n in &l.nodes {
        b = b.node(&n.label);
        for p in &n.parents {
            b = b.directed(p, &n.label);
        }
    }
    for u in &l.latent {
        b = b.latent(u);
    }
    Ok(b.build()?)
}

const PAIR_DOMAIN: [&str; 4] = ["00", "01", "10", "11"];

/// Pre-image model where every copier keeps its parent with probability `n/(n+1)`.
pub fn lifted_model(spec: &PreimageSpec, n: u64) -> Result<Model> {
    if n == 0 {
        return Err(CounterexampleError::InvalidSpec("n must be positive".into()));
    }
    preimage_model(spec, Rational::new((n as i64).into(), (n as i64 + 1).into()))
}

/// Pre-image model with an arbitrary copy probability; `1` gives exact copies.
pub fn preimage_model(spec: &PreimageSpec, keep: Rational) -> Result<Model> {
    let l = layout(spec)?;
    let graph = preimage_graph(spec)?;
    let pair_parent = |parents: &[String]| parents.len() == 1;
    let flip = Rational::one() - &keep;
    let bit = |parent: usize, child: usize| if parent == child { keep.clone() } else { flip.clone() };
    let mut cpts = Vec::new();
    for node in &l.nodes {
        let label = node.label.as_str();
        let cpt = match node.kind {
            Kind::Coin => Cpt::binary_root(label, r(1, 2)),
            Kind::Copier => copy_cpt(label, &node.parents[0], &keep),
            Kind::Pair if pair_parent(&node.parents) => {
                Cpt::tabulate(label, &PAIR_DOMAIN, &[(node.parents[0].as_str(), 4)], |pv| {
                    let (pl, pr) = (pv[0] >> 1, pv[0] & 1);
                    (0..4).map(|v| bit(pl, v >> 1) * bit(pr, v & 1)).collect()
                })
            }
            Kind::Pair => Cpt::tabulate(
                label,
                &PAIR_DOMAIN,
                &[(node.parents[0].as_str(), 2), (node.parents[1].as_str(), 2)],
                |pv| (0..4).map(|v| bit(pv[0], v >> 1) * bit(pv[1], v & 1)).collect(),
            ),
            Kind::Mediator if pair_parent(&node.parents) => {
                Cpt::tabulate(label, &["0", "1"], &[(node.parents[0].as_str(), 4)], |pv| {
                    multiset_row(pv[0] >> 1, pv[0] & 1)
                })
            }
            Kind::Mediator => Cpt::tabulate(
                label,
                &["0", "1"],
                &[(node.parents[0].as_str(), 2), (node.parents[1].as_str(), 2)],
                |pv| multiset_row(pv[0], pv[1]),
            ),
        };
        cpts.push(cpt);
    }
    Ok(Model::new(graph, cpts)?)
}

/// Full-joint mask of the event "every copier reproduced its parent(s)".
fn copy_event(m: &Model, spec: &PreimageSpec, full: &Joint) -> Result<Vec<bool>> {
    let l = layout(spec)?;
    let mut out = Vec::with_capacity(full.len());
    for (cell, _) in full.cells() {
        let value = |label: &str| cell[&NodeId::from(label)];
        let is_pair = |label: &str| m.domain(&NodeId::from(label)).map(|d| d.len() == 4).unwrap_or(false);
        let ok = l.nodes.iter().all(|n| match n.kind {
            Kind::Coin | Kind::Mediator => true,
            Kind::Copier => value(&n.label) == value(&n.parents[0]),
            Kind::Pair => {
                let v = value(&n.label);
                let (pl, pr) = if is_pair(&n.parents[0]) {
                    let p = value(&n.parents[0]);
                    (p >> 1, p & 1)
                } else {
                    (value(&n.parents[0]), value(&n.parents[1]))
                };
                v >> 1 == pl && v & 1 == pr
            }
        });
        out.push(ok);
    }
    Ok(out)
}

/// `P(E)` for the all-copies event `E`.
pub fn copy_event_probability(m: &Model, spec: &PreimageSpec) -> Result<Rational> {
    let full = full_joint(m)?;
    let mask = copy_event(m, spec, &full)?;
    Ok(full
        .weights()
        .iter()
        .zip(mask)
        .filter(|(_, e)| *e)
        .fold(Rational::zero(), |acc, (w, _)| acc + w))
}

/// Observed joint conditioned on the all-copies event.
pub fn observed_given_copy_event(m: &Model, spec: &PreimageSpec) -> Result<Joint> {
    let full = full_joint(m)?;
    let mask = copy_event(m, spec, &full)?;
    let pe = copy_event_probability(m, spec)?;
    if pe.is_zero() {
        return Err(ProbError::ZeroProbabilityEvent.into());
    }
    let weights = full
        .weights()
        .iter()
        .zip(mask)
        .map(|(w, e)| if e { w / &pe } else { Rational::zero() })
        .collect();
    let vars = full.variables().map(|v| (v.clone(), full.domain(v).unwrap().to_vec())).collect();
    Ok(JointTable::new(vars, weights)?.marginal(&m.graph().observed_nodes())?)
}

/// Extends `m` to `target`, a DAG containing every node and edge of `m`'s graph.
///
/// New nodes are binary and constantly 0; existing nodes keep their tables and
/// ignore any new parents.
pub fn embed_in_supergraph(m: &Model, target: &Admg) -> Result<Model> {
    let g = m.graph();
    for n in g.nodes() {
        if !target.contains(n) {
            return Err(CounterexampleError::NotASupergraph(format!("missing node `{n}`")));
        }
    }
    for e in g.edges() {
        if !target.has_edge(&e) {
            return Err(CounterexampleError::NotASupergraph(format!("missing edge `{e}`")));
        }
    }
    if !target.is_dag() {
        return Err(ProbError::NotADag.into());
    }
    let domains: BTreeMap<NodeId, Vec<String>> = target
        .nodes()
        .map(|n| {
            let d = m.domain(n).map(|d| d.to_vec()).unwrap_or_else(|_| vec!["0".into(), "1".into()]);
            (n.clone(), d)
        })
        .collect();
    let mut cpts = Vec::new();
    for v in target.nodes() {
        let parents: Vec<NodeId> = target.parents(&NodeSet::from_iter([v.clone()]))?.into_iter().collect();
        let sizes: Vec<usize> = parents.iter().map(|p| domains[p].len()).collect();
        let rows: usize = sizes.iter().product();
        let table: Vec<Vec<Rational>> = match m.cpt(v) {
            None => (0..rows)
                .map(|_| {
                    let mut row = vec![Rational::zero(); domains[v].len()];
                    row[0] = Rational::one();
                    row
                })
                .collect(),
            Some(orig) => {
                let orig_sizes: Vec<usize> = orig.parents().iter().map(|p| domains[p].len()).collect();
                let keep: Vec<usize> = orig
                    .parents()
                    .iter()
                    .map(|p| parents.iter().position(|q| q == p).expect("original parents survive"))
                    .collect();
                (0..rows)
                    .map(|i| {
                        let vals = crate::prob::decode(i, &sizes);
                        let sub: Vec<usize> = keep.iter().map(|&j| vals[j]).collect();
                        orig.row(&sub, &orig_sizes).to_vec()
                    })
                    .collect()
            }
        };
        cpts.push(Cpt::new(v.clone(), domains[v].clone(), parents, table));
    }
    Ok(Model::new(target.clone(), cpts)?)
}

/// Sign of a rational: -1, 0 or 1.
pub fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if *x > Rational::zero() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projection::latent_project;

    #[test]
    fn determinants() {
        let tm = TransitionMatrices::standard();
        assert_eq!(TransitionMatrices::det(&tm.m0), r(-1, 16));
        assert_eq!(TransitionMatrices::det(&tm.m1), r(-1, 16));
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(&tm.m0[a][b] + &tm.m1[a][b], Rational::one());
            }
        }
    }

    #[test]
    fn chain_model_tables() {
        let m = chain_model(1, Pattern::B).unwrap();
        let z = m.cpt(&"Z1".into()).unwrap();
        assert_eq!(z.rows()[0][0], r(3, 4));
        assert_eq!(z.rows()[3][1], r(3, 4));
        assert_eq!(chain_model(2, Pattern::B).unwrap().graph().len(), 5);
        assert_eq!(chain_model(0, Pattern::B).unwrap_err(), CounterexampleError::InvalidK);
    }

    #[test]
    fn matrix_joint_examples() {
        assert_eq!(matrix_joint(1, 0, 0, &[0]).unwrap(), r(3, 16));
        let mut total = Rational::zero();
        for a in 0..2 {
            for b in 0..2 {
                for z in 0..2 {
                    total += matrix_joint(1, a, b, &[z]).unwrap();
                }
            }
        }
        assert_eq!(total, Rational::one());
        assert_eq!(
            matrix_joint(2, 0, 0, &[0]).unwrap_err(),
            CounterexampleError::LengthMismatch { expected: 2, got: 1 }
        );
    }

    #[test]
    fn eight_fifteenths() {
        let m = chain_model(1, Pattern::B).unwrap();
        let rep = frontdoor_vs_oracle(&m, &chain_query(1), &zero_at("X"), &zero_at("Y")).unwrap();
        assert_eq!(rep.functional, r(8, 15));
        assert_eq!(rep.oracle, r(1, 2));
        assert_eq!(rep.gap, r(1, 30));
        assert_eq!(frontdoor_gap(2).unwrap(), r(-239, 114114));
    }

    #[test]
    fn direct_path_examples() {
        let (m, q) = direct_path_counterexample(1).unwrap();
        let rep = frontdoor_vs_oracle(&m, &q, &zero_at("X"), &zero_at("Y")).unwrap();
        assert_eq!((rep.functional, rep.oracle), (r(1, 2), r(3, 4)));
        assert_eq!(
            direct_path_counterexample_with(2, r(1, 2)).unwrap_err(),
            CounterexampleError::DegenerateCopy
        );
        assert_eq!(direct_path_counterexample(0).unwrap_err(), CounterexampleError::InvalidLength);
    }

    #[test]
    fn preimage_shapes() {
        let bare = preimage_graph(&PreimageSpec::bare(1, Pattern::B).unwrap()).unwrap();
        let collider: Admg = "X -> Z1\nY -> Z1\n".parse().unwrap();
        assert_eq!(bare, collider);

        let spec = PreimageSpec::uniform(1, Pattern::B, 1, 1).unwrap();
        let g = preimage_graph(&spec).unwrap();
        assert_eq!(g.len(), 6);
        let pj = latent_project(&g, &g.observed_nodes()).unwrap();
        assert_eq!(pj, collider);

        let spec = PreimageSpec::uniform(2, Pattern::C, 1, 2).unwrap();
        let g = preimage_graph(&spec).unwrap();
        let pj = latent_project(&g, &g.observed_nodes()).unwrap();
        let expected: Admg = "X -> Z1\nZ1 <-> Z2\nZ2 <-> Y\n".parse().unwrap();
        assert_eq!(pj, expected);
    }

    #[test]
    fn lifted_model_properties() {
        let spec = PreimageSpec::uniform(1, Pattern::B, 1, 1).unwrap();
        let m = lifted_model(&spec, 10).unwrap();
        assert!(observational_joint(&m).unwrap().is_strictly_positive());
        let pe = copy_event_probability(&m, &spec).unwrap();
        let expected = num_traits::pow(r(10, 11), spec.s_count() + 2 * spec.t_count());
        assert_eq!(pe, expected);
        let base = observational_joint(&chain_model(1, Pattern::B).unwrap()).unwrap();
        assert_eq!(observed_given_copy_event(&m, &spec).unwrap(), base);
    }

    #[test]
    fn embedding_adds_constant_nodes() {
        let m = chain_model(1, Pattern::B).unwrap();
        let sup: Admg = "X -> Z1\nY -> Z1\nW -> X\nX -> V\nV -> Y\n".parse().unwrap();
        let e = embed_in_supergraph(&m, &sup).unwrap();
        let j = observational_joint(&e).unwrap();
        assert!(!j.is_strictly_positive());
        let q = chain_query(1);
        assert_eq!(j.marginal(&q.all_nodes()).unwrap(), observational_joint(&m).unwrap());
        let rep = frontdoor_vs_oracle(&e, &q, &zero_at("X"), &zero_at("Y")).unwrap();
        assert_eq!(rep.gap, r(1, 30));
        let not_super: Admg = "X -> Z1\n".parse().unwrap();
        assert!(matches!(embed_in_supergraph(&m, &not_super), Err(CounterexampleError::NotASupergraph(_))));
    }
}

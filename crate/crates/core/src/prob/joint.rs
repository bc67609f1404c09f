use std::collections::BTreeMap;
use std::fmt;

use super::model::{decode, encode, DiscreteModel};
use super::{ProbError, Scalar};
use crate::graph::{NodeId, NodeSet};

/// Default bound on the number of full assignments a model evaluation may visit.
pub const DEFAULT_STATE_CAP: usize = 1 << 24;

/// Values of some variables, as indices into their domains.
pub type Assignment = BTreeMap<NodeId, usize>;

/// A dense distribution over the product of the variables' domains.
///
/// Weights are stored in mixed-radix order, first variable most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct JointTable<T> {
    vars: Vec<(NodeId, Vec<String>)>,
    weights: Vec<T>,
    positive: bool,
}

impl<T: Scalar> JointTable<T> {
    pub fn new(vars: Vec<(NodeId, Vec<String>)>, weights: Vec<T>) -> Result<Self, ProbError> {
        let size: usize = vars.iter().map(|v| v.1.len()).product();
        if weights.len() != size {
            return Err(ProbError::InvalidCpt(format!("{} weights for {size} cells", weights.len())));
        }
        let positive = weights.iter().all(|w| w.is_positive());
        Ok(JointTable { vars, weights, positive })
    }

    pub fn variables(&self) -> impl Iterator<Item = &NodeId> + '_ {
        self.vars.iter().map(|v| &v.0)
    }

    pub fn variable_set(&self) -> NodeSet {
        self.variables().collect()
    }

    pub fn domain(&self, var: &NodeId) -> Result<&[String], ProbError> {
        self.vars
            .iter()
            .find(|v| &v.0 == var)
            .map(|v| v.1.as_slice())
            .ok_or_else(|| ProbError::UnknownVariable(var.clone()))
    }

    pub fn value_index(&self, var: &NodeId, value: &str) -> Result<usize, ProbError> {
        self.domain(var)?
            .iter()
            .position(|d| d == value)
            .ok_or_else(|| ProbError::ValueOutOfDomain { node: var.clone(), value: value.into() })
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn sizes(&self) -> Vec<usize> {
        self.vars.iter().map(|v| v.1.len()).collect()
    }

    /// Every cell as an assignment, with its weight, in storage order.
    pub fn cells(&self) -> impl Iterator<Item = (Assignment, &T)> + '_ {
        let sizes = self.sizes();
        self.weights.iter().enumerate().map(move |(i, w)| {
            let vals = decode(i, &sizes);
            (self.vars.iter().map(|v| v.0.clone()).zip(vals).collect(), w)
        })
    }

    /// Weight of a full assignment of this table's variables.
    pub fn at(&self, a: &Assignment) -> Result<&T, ProbError> {
        let mut vals = Vec::with_capacity(self.vars.len());
        for (v, dom) in &self.vars {
            let i = *a.get(v).ok_or_else(|| ProbError::UnknownVariable(v.clone()))?;
            if i >= dom.len() {
                return Err(ProbError::ValueOutOfDomain { node: v.clone(), value: i.to_string() });
            }
            vals.push(i);
        }
        Ok(&self.weights[encode(&vals, &self.sizes())])
    }

    /// Probability of a partial assignment.
    pub fn prob(&self, event: &Assignment) -> Result<T, ProbError> {
        for v in event.keys() {
            self.domain(v)?;
        }
        let mut total = T::zero();
        for (cell, w) in self.cells() {
            if event.iter().all(|(v, x)| cell[v] == *x) {
                total = total + w.clone();
            }
        }
        Ok(total)
    }

    pub fn total(&self) -> T {
        self.weights.iter().fold(T::zero(), |acc, w| acc + w.clone())
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.positive
    }

    /// Marginal over `keep`, variables in this table's order.
    pub fn marginal(&self, keep: &NodeSet) -> Result<JointTable<T>, ProbError> {
        for v in keep {
            self.domain(v)?;
        }
        let picked: Vec<usize> = (0..self.vars.len()).filter(|&i| keep.contains(&self.vars[i].0)).collect();
        let vars: Vec<_> = picked.iter().map(|&i| self.vars[i].clone()).collect();
        let out_sizes: Vec<usize> = vars.iter().map(|v| v.1.len()).collect();
        let mut weights = vec![T::zero(); out_sizes.iter().product()];
        let sizes = self.sizes();
        for (i, w) in self.weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let vals = decode(i, &sizes);
            let sub: Vec<usize> = picked.iter().map(|&p| vals[p]).collect();
            let j = encode(&sub, &out_sizes);
            weights[j] = weights[j].clone() + w.clone();
        }
        JointTable::new(vars, weights)
    }

    /// Distribution of `target` given the event `given`.
    pub fn conditional(&self, target: &NodeSet, given: &Assignment) -> Result<JointTable<T>, ProbError> {
        let denom = self.prob(given)?;
        if denom.is_zero() {
            return Err(ProbError::ZeroProbabilityEvent);
        }
        let mut restricted = self.clone();
        let sizes = self.sizes();
        for (i, w) in restricted.weights.iter_mut().enumerate() {
            let vals = decode(i, &sizes);
            let consistent = self.vars.iter().zip(&vals).all(|((v, _), x)| given.get(v).is_none_or(|g| g == x));
            *w = if consistent { w.clone() / denom.clone() } else { T::zero() };
        }
        restricted.marginal(target)
    }

    /// Largest absolute cell difference; both tables must share variables and domains.
    pub fn max_abs_diff(&self, other: &JointTable<T>) -> Result<T, ProbError> {
        if self.vars != other.vars {
            return Err(ProbError::InvalidCpt("tables range over different variables".into()));
        }
        Ok(self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a.clone() - b.clone()).abs())
            .fold(T::zero(), |m, d| if d > m { d } else { m }))
    }

    pub fn approx_eq(&self, other: &JointTable<T>) -> bool {
        self.vars == other.vars && self.weights.iter().zip(&other.weights).all(|(a, b)| a.approx_eq(b))
    }
}

impl<T: Scalar> fmt::Display for JointTable<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes = self.sizes();
        for (i, w) in self.weights.iter().enumerate() {
            let vals = decode(i, &sizes);
            let cells: Vec<String> = self.vars.iter().zip(vals).map(|((v, d), x)| format!("{v}={}", d[x])).collect();
            writeln!(f, "P({}) = {w}", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn check_positivity<T: Scalar>(j: &JointTable<T>) -> bool {
    j.is_strictly_positive()
}

/// Joint over observed nodes with latents summed out.
pub fn observational_joint<T: Scalar>(m: &DiscreteModel<T>) -> Result<JointTable<T>, ProbError> {
    evaluate(m, &Assignment::new(), false, DEFAULT_STATE_CAP)
}

/// Joint over every node, latent ones included.
pub fn full_joint<T: Scalar>(m: &DiscreteModel<T>) -> Result<JointTable<T>, ProbError> {
    evaluate(m, &Assignment::new(), true, DEFAULT_STATE_CAP)
}

/// Observed joint under `do(assignment)` by truncated factorization.
pub fn intervene<T: Scalar>(m: &DiscreteModel<T>, assignment: &Assignment) -> Result<JointTable<T>, ProbError> {
    intervene_capped(m, assignment, DEFAULT_STATE_CAP)
}

pub fn intervene_capped<T: Scalar>(
    m: &DiscreteModel<T>,
    assignment: &Assignment,
    cap: usize,
) -> Result<JointTable<T>, ProbError> {
    for (v, &x) in assignment {
        let dom = m.domain(v)?;
        if m.graph().is_latent(v) {
            return Err(ProbError::InterveneOnLatent(v.clone()));
        }
        if x >= dom.len() {
            return Err(ProbError::ValueOutOfDomain { node: v.clone(), value: x.to_string() });
        }
    }
    evaluate(m, assignment, false, cap)
}

/// Depth-first sum over assignments in topological order. Clamped nodes
/// contribute a factor of one at their fixed value.
fn evaluate<T: Scalar>(
    m: &DiscreteModel<T>,
    clamp: &Assignment,
    include_latent: bool,
    cap: usize,
) -> Result<JointTable<T>, ProbError> {
    let g = m.graph();
    let order = g.topological_order();
    let pos: BTreeMap<&NodeId, usize> = order.iter().enumerate().map(|(i, n)| (n, i)).collect();
    let mut size: usize = 1;
    for n in &order {
        size = size.saturating_mul(m.domain(n)?.len());
    }
    if size > cap {
        return Err(ProbError::StateSpaceTooLarge { size, cap });
    }

    struct Node<'a, T> {
        parents: Vec<usize>,
        parent_sizes: Vec<usize>,
        rows: &'a [Vec<T>],
        arity: usize,
        clamp: Option<usize>,
        out_slot: Option<usize>,
    }
    let out_vars: Vec<(NodeId, Vec<String>)> = g
        .nodes()
        .filter(|n| include_latent || !g.is_latent(n))
        .map(|n| (n.clone(), m.domain(n).unwrap().to_vec()))
        .collect();
    let slot: BTreeMap<&NodeId, usize> = out_vars.iter().enumerate().map(|(i, v)| (&v.0, i)).collect();
    let nodes: Vec<Node<T>> = order
        .iter()
        .map(|n| {
            let c = m.cpt(n).expect("model has a table per node");
            Node {
                parents: c.parents().iter().map(|p| pos[p]).collect(),
                parent_sizes: m.parent_sizes(c),
                rows: c.rows(),
                arity: c.domain().len(),
                clamp: clamp.get(n).copied(),
                out_slot: slot.get(n).copied(),
            }
        })
        .collect();
    let out_sizes: Vec<usize> = out_vars.iter().map(|v| v.1.len()).collect();
    let mut weights = vec![T::zero(); out_sizes.iter().product()];

    fn walk<T: Scalar>(
        nodes: &[Node<'_, T>],
        depth: usize,
        values: &mut Vec<usize>,
        w: T,
        out: &mut [usize],
        out_sizes: &[usize],
        weights: &mut [T],
    ) {
        if depth == nodes.len() {
            let j = encode(out, out_sizes);
            weights[j] = weights[j].clone() + w;
            return;
        }
        let node = &nodes[depth];
        let pv: Vec<usize> = node.parents.iter().map(|&p| values[p]).collect();
        let row = &node.rows[encode(&pv, &node.parent_sizes)];
        let mut visit = |v: usize, factor: Option<&T>| {
            let next = match factor {
                Some(p) if p.is_zero() => return,
                Some(p) => w.clone() * p.clone(),
                None => w.clone(),
            };
            values[depth] = v;
            if let Some(s) = node.out_slot {
                out[s] = v;
            }
            walk(nodes, depth + 1, values, next, out, out_sizes, weights);
        };
        match node.clamp {
            Some(v) => visit(v, None),
            None => {
                for (v, p) in row.iter().enumerate().take(node.arity) {
                    visit(v, Some(p));
                }
            }
        }
    }

    let mut values = vec![0; nodes.len()];
    let mut out = vec![0; out_vars.len()];
    walk(&nodes, 0, &mut values, T::one(), &mut out, &out_sizes, &mut weights);
    JointTable::new(out_vars, weights)
}

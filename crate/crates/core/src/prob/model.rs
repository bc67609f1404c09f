use std::collections::BTreeMap;

use super::{ProbError, Scalar};
use crate::graph::{Admg, NodeId, NodeSet};

/// Conditional probability table `P(variable | parents)`.
///
/// Rows are indexed by parent value tuples in mixed-radix order, first parent
/// most significant; each row is a distribution over `domain`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cpt<T> {
    variable: NodeId,
    domain: Vec<String>,
    parents: Vec<NodeId>,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> Cpt<T> {
    /// Shape is checked against parent domains when the model is assembled.
    pub fn new(variable: NodeId, domain: Vec<String>, parents: Vec<NodeId>, rows: Vec<Vec<T>>) -> Self {
        Cpt { variable, domain, parents, rows }
    }

    /// Builds every row from `f(parent value indices)`.
    pub fn tabulate<F>(variable: &str, domain: &[&str], parents: &[(&str, usize)], mut f: F) -> Self
    where
        F: FnMut(&[usize]) -> Vec<T>,
    {
        let sizes: Vec<usize> = parents.iter().map(|p| p.1).collect();
        let rows = (0..sizes.iter().product::<usize>())
            .map(|r| f(&decode(r, &sizes)))
            .collect();
        Cpt {
            variable: variable.into(),
            domain: domain.iter().map(|s| s.to_string()).collect(),
            parents: parents.iter().map(|p| NodeId::from(p.0)).collect(),
            rows,
        }
    }

    /// Parentless binary node with `P(v = 0) = p0`.
    pub fn binary_root(variable: &str, p0: T) -> Self {
        let p1 = T::one() - p0.clone();
        Cpt::tabulate(variable, &["0", "1"], &[], |_| vec![p0.clone(), p1.clone()])
    }

    pub fn variable(&self) -> &NodeId {
        &self.variable
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn parents(&self) -> &[NodeId] {
        &self.parents
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn row(&self, parent_values: &[usize], parent_sizes: &[usize]) -> &[T] {
        &self.rows[encode(parent_values, parent_sizes)]
    }
}

/// Mixed-radix index, first position most significant.
pub(crate) fn encode(values: &[usize], sizes: &[usize]) -> usize {
    values.iter().zip(sizes).fold(0, |acc, (&v, &s)| acc * s + v)
}

pub(crate) fn decode(mut index: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for i in (0..sizes.len()).rev() {
        out[i] = index % sizes[i];
        index /= sizes[i];
    }
    out
}

/// A DAG with one CPT per node, latent nodes included.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteModel<T> {
    graph: Admg,
    cpts: BTreeMap<NodeId, Cpt<T>>,
}

impl<T: Scalar> DiscreteModel<T> {
    pub fn new(graph: Admg, cpts: impl IntoIterator<Item = Cpt<T>>) -> Result<Self, ProbError> {
        if !graph.is_dag() {
            return Err(ProbError::NotADag);
        }
        let mut map = BTreeMap::new();
        for c in cpts {
            if !graph.contains(&c.variable) {
                return Err(ProbError::UnknownVariable(c.variable.clone()));
            }
            if map.contains_key(&c.variable) {
                return Err(ProbError::InvalidCpt(format!("two tables for `{}`", c.variable)));
            }
            map.insert(c.variable.clone(), c);
        }
        if let Some(missing) = graph.nodes().find(|n| !map.contains_key(*n)) {
            return Err(ProbError::MissingCpt(missing.clone()));
        }
        let model = DiscreteModel { graph, cpts: map };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<(), ProbError> {
        for (v, c) in &self.cpts {
            let bad = |msg: String| Err(ProbError::InvalidCpt(format!("`{v}`: {msg}")));
            if c.domain.is_empty() {
                return bad("empty domain".into());
            }
            for (i, d) in c.domain.iter().enumerate() {
                if !crate::graph::is_valid_label(d) || c.domain[..i].contains(d) {
                    return bad(format!("bad or repeated domain value `{d}`"));
                }
            }
            let declared: NodeSet = c.parents.iter().collect();
            let actual = self.graph.parents(&NodeSet::from_iter([v.clone()]))?;
            if declared != actual || declared.len() != c.parents.len() {
                return bad(format!("parents {declared} do not match graph parents {actual}"));
            }
            let sizes = self.parent_sizes(c);
            let expected: usize = sizes.iter().product();
            if c.rows.len() != expected {
                return bad(format!("{} rows, expected {expected}", c.rows.len()));
            }
            for (r, row) in c.rows.iter().enumerate() {
                if row.len() != c.domain.len() {
                    return bad(format!("row {r} has {} entries, expected {}", row.len(), c.domain.len()));
                }
                if row.iter().any(|p| p.is_negative()) {
                    return bad(format!("row {r} has a negative entry"));
                }
                let total = row.iter().fold(T::zero(), |acc, p| acc + p.clone());
                if !total.approx_eq(&T::one()) {
                    return bad(format!("row {r} sums to {total}"));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn parent_sizes(&self, c: &Cpt<T>) -> Vec<usize> {
        c.parents.iter().map(|p| self.cpts[p].domain.len()).collect()
    }

    pub fn graph(&self) -> &Admg {
        &self.graph
    }

    pub fn cpt(&self, node: &NodeId) -> Option<&Cpt<T>> {
        self.cpts.get(node)
    }

    pub fn cpts(&self) -> impl Iterator<Item = &Cpt<T>> + '_ {
        self.cpts.values()
    }

    pub fn domain(&self, node: &NodeId) -> Result<&[String], ProbError> {
        self.cpts
            .get(node)
            .map(|c| c.domain.as_slice())
            .ok_or_else(|| ProbError::UnknownVariable(node.clone()))
    }

    /// Index of `value` in the domain of `node`.
    pub fn value_index(&self, node: &NodeId, value: &str) -> Result<usize, ProbError> {
        self.domain(node)?
            .iter()
            .position(|d| d == value)
            .ok_or_else(|| ProbError::ValueOutOfDomain { node: node.clone(), value: value.into() })
    }

    /// Replaces the table of one node, revalidating the model.
    pub fn with_cpt(&self, cpt: Cpt<T>) -> Result<Self, ProbError> {
        let mut cpts = self.cpts.clone();
        cpts.insert(cpt.variable.clone(), cpt);
        DiscreteModel::new(self.graph.clone(), cpts.into_values())
    }

    /// Same tables, different latent marking.
    pub fn with_latent(&self, latent: &NodeSet) -> Result<Self, ProbError> {
        Ok(DiscreteModel { graph: self.graph.with_latent(latent)?, cpts: self.cpts.clone() })
    }

    /// Converts every probability, e.g. to evaluate a rational model in floating point.
    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Result<DiscreteModel<U>, ProbError> {
        let cpts = self.cpts.values().map(|c| Cpt {
            variable: c.variable.clone(),
            domain: c.domain.clone(),
            parents: c.parents.clone(),
            rows: c.rows.iter().map(|r| r.iter().map(&f).collect()).collect(),
        });
        DiscreteModel::new(self.graph.clone(), cpts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::AdmgBuilder;
    use crate::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn mixed_radix_round_trip() {
        let sizes = [2, 3, 4];
        for i in 0..24 {
            assert_eq!(encode(&decode(i, &sizes), &sizes), i);
        }
        assert_eq!(decode(5, &sizes), vec![0, 1, 1]);
    }

    #[test]
    fn validates_tables() {
        let g = AdmgBuilder::new().directed("X", "Y").build().unwrap();
        let x = Cpt::binary_root("X", r(1, 2));
        let y = Cpt::tabulate("Y", &["0", "1"], &[("X", 2)], |_| vec![r(1, 3), r(2, 3)]);
        assert!(DiscreteModel::new(g.clone(), vec![x.clone(), y]).is_ok());

        let bad = Cpt::tabulate("Y", &["0", "1"], &[("X", 2)], |_| vec![r(1, 3), r(1, 3)]);
        assert!(matches!(DiscreteModel::new(g.clone(), vec![x.clone(), bad]), Err(ProbError::InvalidCpt(_))));

        let orphan = Cpt::binary_root("Y", r(1, 2));
        assert!(matches!(DiscreteModel::new(g.clone(), vec![x.clone(), orphan]), Err(ProbError::InvalidCpt(_))));
        assert_eq!(
            DiscreteModel::new(g, vec![x]).unwrap_err(),
            ProbError::MissingCpt("Y".into())
        );
    }
}

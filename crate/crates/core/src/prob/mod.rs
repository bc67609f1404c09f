//! Exact discrete probability: CPT models, observational and interventional
//! joints, and the front-door and adjustment functionals.
//!
//! Everything is generic over [`Scalar`]. The rational instantiation is exact
//! and is the one used for verification; floating-point instantiations exist
//! for quick numerical exploration.

mod format;
mod functional;
mod joint;
mod model;
mod scalar;

use thiserror::Error;

use crate::graph::{GraphError, NodeId};

pub use format::{parse_model, write_model};
pub use functional::{adjustment_functional, frontdoor_functional};
pub use joint::{
    check_positivity, full_joint, intervene, intervene_capped, observational_joint, Assignment, JointTable,
    DEFAULT_STATE_CAP,
};
pub use model::{Cpt, DiscreteModel};
pub(crate) use model::decode;
pub use scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProbError {
    #[error("state space of {size} assignments exceeds the cap of {cap}")]
    StateSpaceTooLarge { size: usize, cap: usize },
    #[error("value `{value}` is not in the domain of `{node}`")]
    ValueOutOfDomain { node: NodeId, value: String },
    #[error("conditioning event has probability zero")]
    ZeroProbabilityEvent,
    #[error("distribution is not strictly positive on a conditioning event")]
    NonPositiveDistribution,
    #[error("invalid table: {0}")]
    InvalidCpt(String),
    #[error("no table for `{0}`")]
    MissingCpt(NodeId),
    #[error("models require a graph without bidirected edges")]
    NotADag,
    #[error("unknown variable `{0}`")]
    UnknownVariable(NodeId),
    #[error("cannot intervene on latent node `{0}`")]
    InterveneOnLatent(NodeId),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::Query;
    use crate::graph::{AdmgBuilder, NodeSet};
    use crate::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn assign(pairs: &[(&str, usize)]) -> Assignment {
        pairs.iter().map(|&(k, v)| (k.into(), v)).collect()
    }

    fn copy(var: &str, parent: &str, keep: Rational) -> Cpt<Rational> {
        let flip = r(1, 1) - keep.clone();
        Cpt::tabulate(var, &["0", "1"], &[(parent, 2)], |pv| {
            if pv[0] == 0 {
                vec![keep.clone(), flip.clone()]
            } else {
                vec![flip.clone(), keep.clone()]
            }
        })
    }

    #[test]
    fn fair_coin() {
        let g = AdmgBuilder::new().node("C").build().unwrap();
        let m = DiscreteModel::new(g, vec![Cpt::binary_root("C", r(1, 2))]).unwrap();
        let j = observational_joint(&m).unwrap();
        assert_eq!(j.weights(), &[r(1, 2), r(1, 2)]);
        assert!(check_positivity(&j));
        assert_eq!(j.marginal(&j.variable_set()).unwrap(), j);
    }

    #[test]
    fn latent_fork_with_deterministic_copies() {
        let g = AdmgBuilder::new().latent("U").directed("U", "X").directed("U", "Y").build().unwrap();
        let m = DiscreteModel::new(
            g,
            vec![Cpt::binary_root("U", r(1, 2)), copy("X", "U", r(1, 1)), copy("Y", "U", r(1, 1))],
        )
        .unwrap();
        let j = observational_joint(&m).unwrap();
        assert_eq!(j.variable_set(), NodeSet::from_labels(["X", "Y"]));
        assert_eq!(j.at(&assign(&[("X", 0), ("Y", 0)])).unwrap(), &r(1, 2));
        assert!(!check_positivity(&j));
        assert_eq!(full_joint(&m).unwrap().len(), 8);
    }

    #[test]
    fn chain_intervention_matches_conditioning() {
        let g = AdmgBuilder::new().directed("X", "Z").directed("Z", "Y").build().unwrap();
        let m = DiscreteModel::new(
            g,
            vec![Cpt::binary_root("X", r(1, 3)), copy("Z", "X", r(4, 5)), copy("Y", "Z", r(2, 3))],
        )
        .unwrap();
        let j = observational_joint(&m).unwrap();
        let y = NodeSet::from_labels(["Y"]);
        for z in 0..2 {
            let by_do = intervene(&m, &assign(&[("Z", z)])).unwrap().marginal(&y).unwrap();
            let by_obs = j.conditional(&y, &assign(&[("Z", z)])).unwrap();
            assert_eq!(by_do, by_obs);
        }
        let root = intervene(&m, &assign(&[("X", 0)])).unwrap().marginal(&y).unwrap();
        assert_eq!(root, j.conditional(&y, &assign(&[("X", 0)])).unwrap());
        assert_eq!(j.conditional(&y, &Assignment::new()).unwrap(), j.marginal(&y).unwrap());
        assert!(matches!(
            intervene(&m, &assign(&[("Z", 2)])),
            Err(ProbError::ValueOutOfDomain { .. })
        ));
        assert!(matches!(
            intervene_capped(&m, &Assignment::new(), 4),
            Err(ProbError::StateSpaceTooLarge { size: 8, cap: 4 })
        ));
    }

    #[test]
    fn adjustment_on_fork_equals_oracle() {
        let g = AdmgBuilder::new().directed("Z", "X").directed("Z", "Y").directed("X", "Y").build().unwrap();
        let y = Cpt::tabulate("Y", &["0", "1"], &[("X", 2), ("Z", 2)], |pv| {
            let p = r(1 + pv[0] as i64 + 2 * pv[1] as i64, 6);
            vec![p.clone(), r(1, 1) - p]
        });
        let m = DiscreteModel::new(g, vec![Cpt::binary_root("Z", r(2, 7)), copy("X", "Z", r(3, 5)), y]).unwrap();
        let j = observational_joint(&m).unwrap();
        let q = Query::from_labels(&["X"], &["Y"], &["Z"]);
        for x in 0..2 {
            let xs = assign(&[("X", x)]);
            let oracle = intervene(&m, &xs).unwrap().marginal(&q.y).unwrap();
            assert_eq!(adjustment_functional(&j, &q, &xs).unwrap(), oracle);
        }
        let empty = Query::from_labels(&["X"], &["Y"], &[]);
        let xs = assign(&[("X", 0)]);
        assert_eq!(
            adjustment_functional(&j, &empty, &xs).unwrap(),
            j.conditional(&q.y, &xs).unwrap()
        );
    }

    #[test]
    fn functional_refuses_zero_conditioners() {
        let g = AdmgBuilder::new().directed("X", "Z").directed("Z", "Y").build().unwrap();
        let m = DiscreteModel::new(
            g,
            vec![Cpt::binary_root("X", r(1, 2)), copy("Z", "X", r(1, 1)), copy("Y", "Z", r(3, 4))],
        )
        .unwrap();
        let j = observational_joint(&m).unwrap();
        let q = Query::from_labels(&["X"], &["Y"], &["Z"]);
        assert_eq!(
            frontdoor_functional(&j, &q, &assign(&[("X", 0)])).unwrap_err(),
            ProbError::NonPositiveDistribution
        );
    }
}

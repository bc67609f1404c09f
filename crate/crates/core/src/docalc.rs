//! Do-calculus rule applicability and a mechanical replay of the six-step
//! derivation behind the generalized front-door criterion.
//!
//! Every rule reduces to one d-separation query on a mutilated graph; no
//! other logic is involved.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{check_generalized_fdc, CriteriaError, Query};
use crate::graph::{Admg, GraphError, NodeSet};
use crate::paths::{d_separated, PathError};
use crate::projection::{latent_project, ProjectionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DoCalcError {
    #[error("rule sets must be pairwise disjoint")]
    SetsNotDisjoint,
    #[error("rule must be 1, 2 or 3, got {0}")]
    InvalidRule(u8),
    #[error("the generalized front-door criterion does not hold for this query")]
    CriterionNotSatisfied,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
}

/// `P_x(y | z, w)` rewrites: rule 1 drops observation `z`, rule 2 turns
/// action `z` into observation, rule 3 drops action `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleQuery {
    pub rule: u8,
    pub x: NodeSet,
    pub y: NodeSet,
    pub z: NodeSet,
    pub w: NodeSet,
}

impl RuleQuery {
    pub fn new(rule: u8, x: NodeSet, y: NodeSet, z: NodeSet, w: NodeSet) -> Self {
        RuleQuery { rule, x, y, z, w }
    }

    fn validate(&self) -> Result<(), DoCalcError> {
        if !(1..=3).contains(&self.rule) {
            return Err(DoCalcError::InvalidRule(self.rule));
        }
        let sets = [&self.x, &self.y, &self.z, &self.w];
        for (i, a) in sets.iter().enumerate() {
            if sets[i + 1..].iter().any(|b| !a.is_disjoint(b)) {
                return Err(DoCalcError::SetsNotDisjoint);
            }
        }
        Ok(())
    }
}

/// The d-separation a rule reduces to, and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleCheck {
    pub rule: u8,
    pub cut_incoming: NodeSet,
    pub cut_outgoing: NodeSet,
    pub separated: NodeSet,
    pub from: NodeSet,
    pub given: NodeSet,
    pub verdict: bool,
}

impl fmt::Display for RuleCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rule {}: ({} _||_ {} | {}) in G[cut in {}, cut out {}] = {}",
            self.rule, self.separated, self.from, self.given, self.cut_incoming, self.cut_outgoing, self.verdict
        )
    }
}

pub fn rule_check(g: &Admg, rq: &RuleQuery) -> Result<RuleCheck, DoCalcError> {
    rq.validate()?;
    let none = NodeSet::new();
    let (cut_in, cut_out) = match rq.rule {
        1 => (rq.x.clone(), none),
        2 => (rq.x.clone(), rq.z.clone()),
        _ => {
            let an_w = g.mutilate(&rq.x, &none)?.ancestors(&rq.w)?;
            (rq.x.union(&rq.z.difference(&an_w)), none)
        }
    };
    let h = g.mutilate(&cut_in, &cut_out)?;
    let given = rq.w.union(&rq.x);
    let verdict = d_separated(&h, &rq.y, &rq.z, &given)?;
    Ok(RuleCheck {
        rule: rq.rule,
        cut_incoming: cut_in,
        cut_outgoing: cut_out,
        separated: rq.y.clone(),
        from: rq.z.clone(),
        given,
        verdict,
    })
}

pub fn rule_applicable(g: &Admg, rq: &RuleQuery) -> Result<bool, DoCalcError> {
    Ok(rule_check(g, rq)?.verdict)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub label: String,
    pub check: RuleCheck,
}

/// Replay of the derivation on the projection onto `x ∪ y ∪ z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationTrace {
    pub z_ch: NodeSet,
    pub z_nch: NodeSet,
    pub steps: Vec<TraceStep>,
}

impl DerivationTrace {
    pub fn valid(&self) -> bool {
        self.steps.iter().all(|s| s.check.verdict)
    }
}

impl fmt::Display for DerivationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Z_ch = {}, Z_nch = {}", self.z_ch, self.z_nch)?;
        for s in &self.steps {
            writeln!(f, "({}) {}", s.label, s.check)?;
        }
        write!(f, "derivation {}", if self.valid() { "valid" } else { "INVALID" })
    }
}

/// Runs the six rule checks I..VI. `Z_ch` is the part of `z` with a parent in
/// `x` after projecting onto `x ∪ y ∪ z`.
pub fn replay_main_proof(g: &Admg, q: &Query) -> Result<DerivationTrace, DoCalcError> {
    if !check_generalized_fdc(g, q)?.holds {
        return Err(DoCalcError::CriterionNotSatisfied);
    }
    let h = latent_project(g, &q.all_nodes())?;
    let z_ch = q.z.intersection(&h.children(&q.x)?);
    let z_nch = q.z.difference(&z_ch);
    let none = NodeSet::new;
    let (x, y) = (&q.x, &q.y);
    let plan = [
        ("I", RuleQuery::new(2, none(), q.z.clone(), x.clone(), none())),
        ("II", RuleQuery::new(2, x.clone(), y.clone(), z_ch.clone(), z_nch.clone())),
        ("III", RuleQuery::new(3, z_ch.clone(), y.clone(), x.clone(), z_nch.clone())),
        ("IV", RuleQuery::new(1, z_ch.clone(), x.clone(), z_nch.clone(), none())),
        ("V", RuleQuery::new(3, none(), x.clone(), z_ch.clone(), none())),
        ("VI", RuleQuery::new(2, none(), y.clone(), z_ch.clone(), x.union(&z_nch))),
    ];
    let steps = plan
        .into_iter()
        .map(|(label, rq)| Ok(TraceStep { label: label.into(), check: rule_check(&h, &rq)? }))
        .collect::<Result<Vec<_>, DoCalcError>>()?;
    Ok(DerivationTrace { z_ch, z_nch, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::AdmgBuilder;

    fn s(labels: &[&str]) -> NodeSet {
        NodeSet::from_labels(labels)
    }

    #[test]
    fn rule_examples() {
        let chain = AdmgBuilder::new().directed("X", "Z").directed("Z", "Y").build().unwrap();
        let rq = RuleQuery::new(2, s(&[]), s(&["Y"]), s(&["X"]), s(&[]));
        assert!(rule_applicable(&chain, &rq).unwrap());

        let rq = RuleQuery::new(2, s(&[]), s(&["Y"]), s(&["X"]), s(&[]));
        assert!(!rule_applicable(&fixtures::identifiability_a(), &rq).unwrap());

        let rq = RuleQuery::new(3, s(&["X2"]), s(&["Y"]), s(&["X1"]), s(&[]));
        assert!(rule_applicable(&fixtures::fdc_violate_2(), &rq).unwrap());
    }

    #[test]
    fn rule_one_with_empty_z_is_vacuous() {
        let g = fixtures::identifiability_a();
        let rq = RuleQuery::new(1, s(&["X"]), s(&["Y"]), s(&[]), s(&["Z"]));
        assert!(rule_applicable(&g, &rq).unwrap());
    }

    #[test]
    fn rejects_bad_rule_queries() {
        let g = fixtures::identifiability_a();
        let overlap = RuleQuery::new(1, s(&["X"]), s(&["X"]), s(&[]), s(&[]));
        assert_eq!(rule_check(&g, &overlap).unwrap_err(), DoCalcError::SetsNotDisjoint);
        let bad = RuleQuery::new(4, s(&["X"]), s(&["Y"]), s(&[]), s(&[]));
        assert_eq!(rule_check(&g, &bad).unwrap_err(), DoCalcError::InvalidRule(4));
    }

    #[test]
    fn replays_on_fixtures() {
        let q = Query::from_labels(&["X"], &["Y"], &["Z"]);
        let trace = replay_main_proof(&fixtures::identifiability_b(), &q).unwrap();
        assert_eq!(trace.steps.len(), 6);
        assert!(trace.valid(), "{trace}");

        let q = Query::from_labels(&["X"], &["Y"], &["Z1", "Z2"]);
        let trace = replay_main_proof(&fixtures::fdc_violate_3(), &q).unwrap();
        assert!(trace.valid(), "{trace}");
        assert_eq!(trace.z_ch, s(&["Z1"]));

        let collider = AdmgBuilder::new().directed("X", "Z").directed("Y", "Z").build().unwrap();
        assert_eq!(
            replay_main_proof(&collider, &q_xyz()).unwrap_err(),
            DoCalcError::CriterionNotSatisfied
        );
    }

    fn q_xyz() -> Query {
        Query::from_labels(&["X"], &["Y"], &["Z"])
    }
}

//! Graphical identification criteria for causal effects, checked symbolically
//! and verified numerically with exact rational arithmetic.

use num_rational::BigRational;

pub mod corpus;
pub mod counterexamples;
pub mod criteria;
pub mod docalc;
pub mod fixtures;
pub mod graph;
pub mod paths;
pub mod prob;
pub mod projection;
pub mod suite;

pub use graph::{Admg, AdmgBuilder, Edge, GraphError, NodeId, NodeSet, ParseError, Relation};
pub use paths::{Path, PathError, Traversal};
pub use projection::{latent_project, project_path, ProjectionError};
pub use criteria::{
    check_adjustment, check_backdoor, check_generalized_fdc, check_pearl_fdc, find_cond1_violation,
    find_cond_ii_pattern, CriteriaError, Criterion, CriterionReport, Pattern, PatternWitness, Query,
};
pub use counterexamples::{
    chain_model, direct_path_counterexample, embed_in_supergraph, frontdoor_gap, lifted_model, matrix_joint,
    preimage_graph, CounterexampleError, GapReport, PreimageSpec, TransitionMatrices,
};
pub use docalc::{replay_main_proof, rule_applicable, rule_check, DerivationTrace, DoCalcError, RuleQuery};
pub use prob::{
    adjustment_functional, check_positivity, frontdoor_functional, full_joint, intervene, observational_joint,
    Assignment, Cpt, DiscreteModel, JointTable, ProbError, Scalar,
};

/// Exact arbitrary-precision rational; the scalar used for verification.
pub type Rational = BigRational;
/// A model with exact rational probabilities.
pub type Model = DiscreteModel<Rational>;
/// A joint table with exact rational weights.
pub type Joint = JointTable<Rational>;

//! Report types. Every report serializes to JSON and back without loss;
//! probabilities travel as exact fraction strings.

use std::collections::BTreeMap;
use std::fmt;

use frontdoor::suite::Outcome;
use frontdoor::{Admg, CriterionReport, DerivationTrace, NodeSet, Path, Query};
use serde::{Deserialize, Serialize};

/// Node label to value label.
pub type Values = BTreeMap<String, String>;

fn show(v: &Values) -> String {
    v.iter().map(|(k, x)| format!("{k}={x}")).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsepReport {
    pub x: NodeSet,
    pub y: NodeSet,
    pub z: NodeSet,
    pub separated: bool,
    /// An open path when the sets are connected.
    pub witness: Option<Path>,
}

impl fmt::Display for DsepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.separated { "d-separated" } else { "d-connected" };
        write!(f, "{} and {} are {verdict} given {}", self.x, self.y, self.z)?;
        if let Some(w) = &self.witness {
            write!(f, "\nopen path: {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectReport {
    pub keep: NodeSet,
    pub graph: Admg,
}

impl fmt::Display for ProjectReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.graph)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub query: Query,
    pub reports: Vec<CriterionReport>,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "x = {}, y = {}, z = {}", self.query.x, self.query.y, self.query.z)?;
        for (i, r) in self.reports.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub y: Values,
    pub functional: String,
    pub oracle: String,
    pub gap: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluateReport {
    pub functional: String,
    pub query: Query,
    pub xstar: Values,
    pub cells: Vec<Cell>,
    pub strictly_positive: bool,
    pub equal: bool,
}

impl fmt::Display for EvaluateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} functional against do({})", self.functional, show(&self.xstar))?;
        for c in &self.cells {
            writeln!(f, "  {}: functional {}  oracle {}  gap {}", show(&c.y), c.functional, c.oracle, c.gap)?;
        }
        writeln!(f, "strictly positive joint: {}", if self.strictly_positive { "yes" } else { "no" })?;
        write!(f, "{}", if self.equal { "functional equals oracle" } else { "functional differs from oracle" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub intervention: Values,
    pub cells: Vec<(Values, String)>,
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "do({})", show(&self.intervention))?;
        for (v, p) in &self.cells {
            write!(f, "\n  P({}) = {p}", show(v))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub pattern: String,
    pub k: usize,
    pub lift: Option<u64>,
    pub query: Query,
    /// The model file, unless it was written elsewhere.
    pub model: Option<String>,
    pub functional: String,
    pub oracle: String,
    pub gap: String,
    pub strictly_positive: bool,
}

impl fmt::Display for CounterexampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = &self.model {
            writeln!(f, "{m}")?;
        }
        let lift = self.lift.map(|n| format!(", lifted with n = {n}")).unwrap_or_default();
        writeln!(f, "# pattern {}, k = {}{lift}", self.pattern, self.k)?;
        writeln!(f, "# at x* = 0, y = 0: functional {}  oracle {}  gap {}", self.functional, self.oracle, self.gap)?;
        write!(f, "# strictly positive joint: {}", if self.strictly_positive { "yes" } else { "no" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPaperReport {
    pub seed: u64,
    pub outcomes: Vec<Outcome>,
    pub passed: bool,
}

impl fmt::Display for VerifyPaperReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verification suite, seed {}", self.seed)?;
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        let failed = self.outcomes.iter().filter(|o| !o.passed).count();
        write!(f, "{} passed, {failed} failed", self.outcomes.len() - failed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofReport {
    pub query: Query,
    /// Absent when the criterion fails and there is nothing to replay.
    pub trace: Option<DerivationTrace>,
    pub valid: bool,
}

impl fmt::Display for ProofReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.trace {
            Some(t) => write!(f, "{t}"),
            None => write!(f, "the generalized front-door criterion fails; nothing to replay"),
        }
    }
}

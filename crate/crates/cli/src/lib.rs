//! Command-line front end. [`run`] maps arguments to an exit code:
//! 0 success, 1 verification mismatch, 2 usage error, 3 parse error.

pub mod args;
pub mod report;

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::Path as FsPath;

use clap::Parser;
use frontdoor::counterexamples::{chain_query, frontdoor_vs_oracle};
use frontdoor::prob::{parse_model, write_model, JointTable};
use frontdoor::suite::Suite;
use frontdoor::{
    adjustment_functional, chain_model, direct_path_counterexample, frontdoor_functional, intervene,
    latent_project, lifted_model, observational_joint, replay_main_proof, Admg, Assignment, CriteriaError,
    Criterion, DoCalcError, GraphError, Model, NodeId, NodeSet, Pattern, PreimageSpec, ProbError, Query, Rational,
};
use serde::Serialize;
use thiserror::Error;

use args::{Cli, Command, Expect, Format, Functional, QueryArgs};
use report::*;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse(_) => "parse",
        }
    }
}

fn usage(e: impl Display) -> CliError {
    CliError::Usage(e.to_string())
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        usage(e)
    }
}

impl From<CriteriaError> for CliError {
    fn from(e: CriteriaError) -> Self {
        usage(e)
    }
}

impl From<ProbError> for CliError {
    fn from(e: ProbError) -> Self {
        usage(e)
    }
}

/// A rendered report plus whether it counts as a verification success.
struct Done {
    text: String,
    json: String,
    ok: bool,
}

fn done<R: Display + Serialize>(r: &R, ok: bool) -> Done {
    Done { text: r.to_string(), json: serde_json::to_string_pretty(r).expect("reports serialize"), ok }
}

fn read(path: &FsPath) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &FsPath) -> Result<Admg, CliError> {
    read(path)?.parse().map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_model(path: &FsPath) -> Result<Model, CliError> {
    parse_model(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn node_set(text: &str) -> Result<NodeSet, CliError> {
    NodeSet::parse_list(text).map_err(usage)
}

fn query(q: &QueryArgs) -> Result<Query, CliError> {
    Ok(Query::new(node_set(&q.x)?, node_set(&q.y)?, node_set(&q.z)?))
}

/// Parses `A=a,B=b` against the model's domains.
fn assignment(m: &Model, text: &str) -> Result<Assignment, CliError> {
    let mut out = Assignment::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (node, value) = part.split_once('=').ok_or_else(|| usage(format!("expected NODE=value, got `{part}`")))?;
        let node = NodeId::new(node.trim())?;
        let idx = m.value_index(&node, value.trim())?;
        if out.insert(node.clone(), idx).is_some() {
            return Err(usage(format!("`{node}` assigned twice")));
        }
    }
    Ok(out)
}

fn labelled(j: &JointTable<Rational>, a: &Assignment) -> Values {
    a.iter().map(|(k, &v)| (k.to_string(), j.domain(k).map(|d| d[v].clone()).unwrap_or_default())).collect()
}

fn model_values(m: &Model, a: &Assignment) -> Values {
    a.iter().map(|(k, &v)| (k.to_string(), m.domain(k).map(|d| d[v].clone()).unwrap_or_default())).collect()
}

fn dsep(graph: &FsPath, q: &QueryArgs) -> Result<Done, CliError> {
    let g = load_graph(graph)?;
    let q = query(q)?;
    let witness = frontdoor::paths::d_connecting_path(&g, &q.x, &q.y, &q.z).map_err(usage)?;
    let r = DsepReport { separated: witness.is_none(), witness, x: q.x, y: q.y, z: q.z };
    Ok(done(&r, true))
}

fn project(graph: &FsPath, keep: Option<&str>) -> Result<Done, CliError> {
    let g = load_graph(graph)?;
    let keep = match keep {
        Some(k) => node_set(k)?,
        None => g.observed_nodes(),
    };
    let graph = latent_project(&g, &keep).map_err(usage)?;
    Ok(done(&ProjectReport { keep, graph }, true))
}

fn check(graph: &FsPath, criterion: &str, q: &QueryArgs) -> Result<Done, CliError> {
    let g = load_graph(graph)?;
    let q = query(q)?;
    let which: Vec<Criterion> = if criterion == "all" {
        Criterion::ALL.to_vec()
    } else {
        vec![criterion.parse().map_err(usage)?]
    };
    let reports = which.iter().map(|c| c.check(&g, &q)).collect::<Result<Vec<_>, _>>()?;
    Ok(done(&CheckReport { query: q, reports }, true))
}

fn evaluate(model: &FsPath, q: &QueryArgs, xstar: &str, kind: Functional, expect: Option<Expect>) -> Result<Done, CliError> {
    let m = load_model(model)?;
    let q = query(q)?;
    q.validate(m.graph())?;
    let xs = assignment(&m, xstar)?;
    let j = observational_joint(&m)?;
    let f = match kind {
        Functional::Frontdoor => frontdoor_functional(&j, &q, &xs)?,
        Functional::Adjustment => adjustment_functional(&j, &q, &xs)?,
    };
    let o = intervene(&m, &xs)?.marginal(&q.y)?;
    let cells: Vec<Cell> = f
        .cells()
        .map(|(a, fv)| {
            let ov = o.at(&a).expect("same variables").clone();
            Cell { y: labelled(&f, &a), functional: fv.to_string(), gap: (fv - &ov).to_string(), oracle: ov.to_string() }
        })
        .collect();
    let equal = cells.iter().all(|c| c.gap == "0");
    let r = EvaluateReport {
        functional: match kind {
            Functional::Frontdoor => "front-door",
            Functional::Adjustment => "adjustment",
        }
        .into(),
        xstar: model_values(&m, &xs),
        query: q,
        cells,
        strictly_positive: j.is_strictly_positive(),
        equal,
    };
    let ok = match expect {
        None => true,
        Some(Expect::Equal) => equal,
        Some(Expect::Differ) => !equal,
    };
    Ok(done(&r, ok))
}

fn oracle(model: &FsPath, intervention: &str, y: Option<&str>) -> Result<Done, CliError> {
    let m = load_model(model)?;
    let xs = assignment(&m, intervention)?;
    let mut j = intervene(&m, &xs)?;
    if let Some(y) = y {
        j = j.marginal(&node_set(y)?)?;
    }
    let cells = j.cells().map(|(a, p)| (labelled(&j, &a), p.to_string())).collect();
    Ok(done(&OracleReport { intervention: model_values(&m, &xs), cells }, true))
}

fn counterexample(pattern: &str, k: usize, lift: Option<u64>, out: Option<&FsPath>) -> Result<Done, CliError> {
    let pattern: Pattern = pattern.parse().map_err(usage)?;
    let (m, q) = match (pattern, lift) {
        (Pattern::A, Some(_)) => return Err(usage("pattern a is already strictly positive; drop --lift")),
        (Pattern::A, None) => direct_path_counterexample(k).map_err(usage)?,
        (p, None) => (chain_model(k, p).map_err(usage)?, chain_query(k)),
        (p, Some(n)) => {
            let spec = PreimageSpec::uniform(k, p, 1, 1).map_err(usage)?;
            (lifted_model(&spec, n).map_err(usage)?, spec.query())
        }
    };
    let zero = |l: &str| [(NodeId::from(l), 0)].into_iter().collect::<Assignment>();
    let rep = frontdoor_vs_oracle(&m, &q, &zero("X"), &zero("Y")).map_err(usage)?;
    let text = write_model(&m);
    let model = match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            None
        }
        None => Some(text),
    };
    let r = CounterexampleReport {
        pattern: pattern.to_string(),
        k,
        lift,
        query: q,
        model,
        functional: rep.functional.to_string(),
        oracle: rep.oracle.to_string(),
        gap: rep.gap.to_string(),
        strictly_positive: rep.positive,
    };
    Ok(done(&r, rep.mismatch()))
}

fn verify_paper(seed: u64) -> Done {
    let outcomes = Suite::new(seed).run_all();
    let passed = outcomes.iter().all(|o| o.passed);
    done(&VerifyPaperReport { seed, outcomes, passed }, passed)
}

fn verify_main(graph: &FsPath, q: &QueryArgs) -> Result<Done, CliError> {
    let g = load_graph(graph)?;
    let q = query(q)?;
    let trace = match replay_main_proof(&g, &q) {
        Ok(t) => Some(t),
        Err(DoCalcError::CriterionNotSatisfied) => None,
        Err(e) => return Err(usage(e)),
    };
    let valid = trace.as_ref().is_some_and(|t| t.valid());
    Ok(done(&ProofReport { query: q, trace, valid }, valid))
}

fn dispatch(cmd: &Command) -> Result<Done, CliError> {
    match cmd {
        Command::Dsep { graph, query } => dsep(graph, query),
        Command::Project { graph, keep } => project(graph, keep.as_deref()),
        Command::Check { graph, criterion, query } => check(graph, criterion, query),
        Command::Evaluate { model, query, xstar, functional, expect } => {
            evaluate(model, query, xstar, *functional, *expect)
        }
        Command::Oracle { model, intervention, y } => oracle(model, intervention, y.as_deref()),
        Command::Counterexample { pattern, k, lift, out } => counterexample(pattern, *k, *lift, out.as_deref()),
        Command::VerifyPaper { seed } => Ok(verify_paper(*seed)),
        Command::Verify { graph, query, .. } => verify_main(graph, query),
    }
}

/// Parses `argv`, runs the command and writes the report; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(d) => {
            let body = match cli.format {
                Format::Text => d.text,
                Format::Json => d.json,
            };
            let _ = writeln!(out, "{body}");
            if d.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = match cli.format {
                Format::Text => writeln!(err, "error: {e}"),
                Format::Json => writeln!(
                    err,
                    "{}",
                    serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
                ),
            };
            e.exit_code()
        }
    }
}

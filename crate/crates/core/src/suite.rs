//! The verification suite: eleven checks that reproduce the front-door results
//! exactly, each with a runtime budget. Shared by the acceptance test target
//! and the `verify-paper` command.

use std::fmt;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{binary_assignments, criterion_corpus, latent_dag, random_admg, random_dag, random_model, rng, Instance};
use crate::counterexamples::{
    chain_model, chain_query, direct_path_counterexample, frontdoor_gap, frontdoor_vs_oracle, lifted_model,
    matrix_joint, sign, PreimageSpec, TransitionMatrices,
};
use crate::criteria::{check_generalized_fdc, check_pearl_fdc, find_cond_ii_pattern, CriterionReport, Pattern, Query};
use crate::docalc::{replay_main_proof, DoCalcError};
use crate::fixtures;
use crate::graph::{Admg, NodeId, NodeSet};
use crate::paths::{d_separated, d_separated_by_enumeration};
use crate::prob::{frontdoor_functional, intervene, observational_joint, Assignment};
use crate::projection::latent_project;
use crate::{Model, Rational};

/// Random DAGs in the criterion corpus.
pub const CORPUS_SIZE: usize = 600;
/// Minimum corpus instances on which the generalized criterion must hold.
pub const MIN_GFDC_INSTANCES: usize = 150;
/// Positive models drawn per fixture graph.
pub const MODELS_PER_FIXTURE: usize = 20;
pub const MAX_NUMERATOR: u32 = 9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<28} {:>7} ms / {:>6} ms  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.budget_ms,
            self.detail
        )
    }
}

pub const CRITERIA: [(u8, &str, u64); 11] = [
    (1, "eight-fifteenths", 1),
    (2, "sign law", 10),
    (3, "matrix representation", 10),
    (4, "fixture verdicts", 30),
    (5, "soundness sweep", 300),
    (6, "necessity", 60),
    (7, "d-separation oracle", 120),
    (8, "projection preservation", 120),
    (9, "proof replay", 60),
    (10, "pattern equivalence", 60),
    (11, "convergence", 30),
];

/// A corpus instance with both front-door verdicts precomputed.
pub struct Judged {
    pub instance: Instance,
    pub pearl: CriterionReport,
    pub gfdc: CriterionReport,
}

pub struct Suite {
    seed: u64,
    corpus: OnceLock<Result<Vec<Judged>, String>>,
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn zero_at(label: &str) -> Assignment {
    [(NodeId::from(label), 0)].into_iter().collect()
}

/// Compares the front-door functional with the interventional oracle at
/// every `x*`; returns the first mismatching `x*`.
fn functional_matches_oracle(m: &Model, q: &Query) -> Result<Option<Assignment>, String> {
    let j = observational_joint(m).map_err(err)?;
    for xs in binary_assignments(&q.x) {
        let f = frontdoor_functional(&j, q, &xs).map_err(err)?;
        let o = intervene(m, &xs).map_err(err)?.marginal(&q.y).map_err(err)?;
        if f != o {
            return Ok(Some(xs));
        }
    }
    Ok(None)
}

impl Suite {
    pub fn new(seed: u64) -> Self {
        Suite { seed, corpus: OnceLock::new() }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The criterion corpus with verdicts, built on first use.
    pub fn corpus(&self) -> Result<&[Judged], String> {
        self.corpus
            .get_or_init(|| {
                criterion_corpus(self.seed, CORPUS_SIZE)
                    .into_par_iter()
                    .map(|instance| {
                        let pearl = check_pearl_fdc(&instance.graph, &instance.query).map_err(err)?;
                        let gfdc = check_generalized_fdc(&instance.graph, &instance.query).map_err(err)?;
                        Ok(Judged { instance, pearl, gfdc })
                    })
                    .collect()
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    pub fn run(&self, id: u8) -> Outcome {
        let &(id, name, budget) = CRITERIA.iter().find(|c| c.0 == id).expect("criterion ids are 1..=11");
        let start = Instant::now();
        let result = match id {
            1 => self.eight_fifteenths(),
            2 => self.sign_law(),
            3 => self.matrix_representation(),
            4 => self.fixture_verdicts(),
            5 => self.soundness_sweep(),
            6 => self.necessity(),
            7 => self.dsep_oracle(),
            8 => self.projection_preservation(),
            9 => self.proof_replay(),
            10 => self.pattern_equivalence(),
            _ => self.convergence(),
        };
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(budget);
        let (mut passed, mut detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if elapsed > budget {
            passed = false;
            detail = format!("over budget; {detail}");
        }
        Outcome { id, name: name.to_string(), passed, detail, elapsed_ms: elapsed.as_millis(), budget_ms: budget.as_millis() }
    }

    pub fn run_all(&self) -> Vec<Outcome> {
        CRITERIA.iter().map(|c| self.run(c.0)).collect()
    }

    fn eight_fifteenths(&self) -> Check {
        let m = chain_model(1, Pattern::B).map_err(err)?;
        let rep = frontdoor_vs_oracle(&m, &chain_query(1), &zero_at("X"), &zero_at("Y")).map_err(err)?;
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        ensure(rep.functional == r(8, 15), || format!("functional {}", rep.functional))?;
        ensure(rep.oracle == r(1, 2), || format!("oracle {}", rep.oracle))?;
        ensure(rep.gap == r(1, 30), || format!("gap {}", rep.gap))?;
        Ok(format!("functional {} oracle {} gap {}", rep.functional, rep.oracle, rep.gap))
    }

    fn sign_law(&self) -> Check {
        let gaps: Vec<(usize, Rational)> = (1..=5usize)
            .into_par_iter()
            .map(|k: usize| frontdoor_gap(k).map(|g| (k, g)).map_err(err))
            .collect::<Result<_, _>>()?;
        let mut signs = Vec::new();
        for (k, g) in &gaps {
            let expected = if k % 2 == 1 { 1 } else { -1 };
            ensure(sign(g) == expected, || format!("k={k}: gap {g} has sign {}", sign(g)))?;
            signs.push(if expected > 0 { '+' } else { '-' });
        }
        Ok(format!("signs for k=1..5: {}", signs.iter().collect::<String>()))
    }

    fn matrix_representation(&self) -> Check {
        let tm = TransitionMatrices::standard();
        let quarter = Rational::new((-1).into(), 16.into());
        ensure(TransitionMatrices::det(&tm.m0) == quarter && TransitionMatrices::det(&tm.m1) == quarter, || {
            "determinants differ from -1/16".into()
        })?;
        let mut cells = 0;
        for k in 1..=4usize {
            let j = observational_joint(&chain_model(k, Pattern::B).map_err(err)?).map_err(err)?;
            for (a, w) in j.cells() {
                let z: Vec<u8> = (1..=k).map(|i| a[&NodeId::from(format!("Z{i}").as_str())] as u8).collect();
                let expected = matrix_joint(k, a[&NodeId::from("X")] as u8, a[&NodeId::from("Y")] as u8, &z)
                    .map_err(err)?;
                ensure(*w == expected, || format!("k={k}: cell {a:?} is {w}, matrix gives {expected}"))?;
                cells += 1;
            }
        }
        Ok(format!("det = -1/16 twice, {cells} cells agree"))
    }

    fn fixture_verdicts(&self) -> Check {
        let q1 = Query::from_labels(&["X"], &["Y"], &["Z"]);
        // name, graph, query, pearl holds, failing pearl conditions, gfdc holds
        type Case<'a> = (&'a str, Admg, Query, bool, &'a [&'a str], bool);
        let cases: Vec<Case> = vec![
            ("identifiability (a)", fixtures::identifiability_a(), q1.clone(), false, &["1", "2"], false),
            ("identifiability (b)", fixtures::identifiability_b(), q1, true, &[], true),
            (
                "violate (2)",
                fixtures::fdc_violate_2(),
                Query::from_labels(&["X1", "X2"], &["Y"], &["Z"]),
                false,
                &["2"],
                true,
            ),
            (
                "violate (3)",
                fixtures::fdc_violate_3(),
                Query::from_labels(&["X"], &["Y"], &["Z1", "Z2"]),
                false,
                &["3"],
                true,
            ),
        ];
        let mut checked = 0;
        for (i, (name, g, q, pearl_holds, failing, gfdc_holds)) in cases.iter().enumerate() {
            let pearl = check_pearl_fdc(g, q).map_err(err)?;
            let gfdc = check_generalized_fdc(g, q).map_err(err)?;
            ensure(pearl.holds == *pearl_holds, || format!("{name}: Pearl verdict {}", pearl.holds))?;
            let failed: Vec<&str> = pearl.conditions.iter().filter(|c| !c.holds).map(|c| c.label.as_str()).collect();
            ensure(failed == *failing, || format!("{name}: Pearl fails {failed:?}, expected {failing:?}"))?;
            ensure(gfdc.holds == *gfdc_holds, || format!("{name}: generalized verdict {}", gfdc.holds))?;
            if gfdc.holds {
                let dag = latent_dag(g).map_err(err)?;
                let bad = (0..MODELS_PER_FIXTURE)
                    .into_par_iter()
                    .map(|t| {
                        let mut r = rng(self.seed ^ ((i as u64) << 32 | t as u64));
                        let m = random_model(&mut r, &dag, MAX_NUMERATOR).map_err(err)?;
                        functional_matches_oracle(&m, q)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                ensure(bad.iter().all(Option::is_none), || format!("{name}: functional differs from oracle"))?;
                checked += MODELS_PER_FIXTURE;
            }
        }
        Ok(format!("4 verdicts match, {checked} models agree with the oracle"))
    }

    fn soundness_sweep(&self) -> Check {
        let corpus = self.corpus()?;
        let holding: Vec<&Judged> = corpus.iter().filter(|j| j.gfdc.holds).collect();
        ensure(holding.len() >= MIN_GFDC_INSTANCES, || {
            format!("only {} of {} instances satisfy the criterion", holding.len(), corpus.len())
        })?;
        if let Some(j) = corpus.iter().find(|j| j.pearl.holds && !j.gfdc.holds) {
            return Err(format!("seed {}: Pearl holds but generalized fails", j.instance.seed));
        }
        let pearl = corpus.iter().filter(|j| j.pearl.holds).count();
        let failures: Vec<String> = holding
            .par_iter()
            .filter_map(|j| {
                let mut r = rng(j.instance.seed ^ 0xA5A5);
                let outcome = random_model(&mut r, &j.instance.graph, MAX_NUMERATOR)
                    .map_err(err)
                    .and_then(|m| functional_matches_oracle(&m, &j.instance.query));
                match outcome {
                    Ok(None) => None,
                    Ok(Some(xs)) => Some(format!("seed {}: mismatch at x* = {xs:?}", j.instance.seed)),
                    Err(e) => Some(format!("seed {}: {e}", j.instance.seed)),
                }
            })
            .collect();
        ensure(failures.is_empty(), || failures.join("; "))?;
        Ok(format!(
            "{} instances, {} satisfy the generalized criterion ({} Pearl), functional = oracle on all",
            corpus.len(),
            holding.len(),
            pearl
        ))
    }

    fn necessity(&self) -> Check {
        let (x0, y0) = (zero_at("X"), zero_at("Y"));
        let mut cases = 0;
        for len in 1..=3 {
            let (m, q) = direct_path_counterexample(len).map_err(err)?;
            let rep = frontdoor_vs_oracle(&m, &q, &x0, &y0).map_err(err)?;
            ensure(rep.mismatch(), || format!("pattern a, length {len}: no gap"))?;
            let w = find_cond_ii_pattern(m.graph(), &q).map_err(err)?;
            ensure(w.map(|w| w.pattern) == Some(Pattern::A), || format!("pattern a, length {len}: not detected"))?;
            cases += 1;
        }
        for pattern in [Pattern::B, Pattern::C] {
            for k in 1..=3 {
                let m = chain_model(k, pattern).map_err(err)?;
                let q = chain_query(k);
                let rep = frontdoor_vs_oracle(&m, &q, &x0, &y0).map_err(err)?;
                ensure(rep.mismatch(), || format!("pattern {pattern}, k={k}: no gap"))?;
                let w = find_cond_ii_pattern(m.graph(), &q).map_err(err)?;
                ensure(w.as_ref().map(|w| (w.pattern, w.k)) == Some((pattern, k)), || {
                    format!("pattern {pattern}, k={k}: detector found {w:?}")
                })?;
                cases += 1;
            }
            let spec = PreimageSpec::uniform(1, pattern, 1, 1).map_err(err)?;
            let m = lifted_model(&spec, 1000).map_err(err)?;
            let rep = frontdoor_vs_oracle(&m, &spec.query(), &x0, &y0).map_err(err)?;
            ensure(rep.positive, || format!("lifted pattern {pattern}: joint not strictly positive"))?;
            ensure(rep.mismatch(), || format!("lifted pattern {pattern}: no gap"))?;
            cases += 1;
        }
        Ok(format!("{cases} constructions, functional != oracle on each"))
    }

    fn dsep_oracle(&self) -> Check {
        let graphs: Vec<Admg> = {
            let mut r = rng(self.seed ^ 0x7);
            (0..200).map(|i| random_admg(&mut r, 3 + i % 4, 0.4, 0.25)).collect()
        };
        let totals = graphs
            .par_iter()
            .map(|g| {
                let nodes: Vec<NodeId> = g.nodes().cloned().collect();
                let mut n = 0usize;
                for code in 0..4usize.pow(nodes.len() as u32) {
                    let mut sets = [NodeSet::new(), NodeSet::new(), NodeSet::new()];
                    let mut c = code;
                    for v in &nodes {
                        if c % 4 < 3 {
                            sets[c % 4].insert(v.clone());
                        }
                        c /= 4;
                    }
                    let [x, y, z] = &sets;
                    if x.is_empty() || y.is_empty() {
                        continue;
                    }
                    let fast = d_separated(g, x, y, z).map_err(err)?;
                    let slow = d_separated_by_enumeration(g, x, y, z).map_err(err)?;
                    if fast != slow {
                        return Err(format!("{x} vs {y} given {z} in\n{g}: {fast} != {slow}"));
                    }
                    n += 1;
                }
                Ok(n)
            })
            .collect::<Result<Vec<usize>, String>>()?;
        Ok(format!("{} graphs, {} triples agree", graphs.len(), totals.iter().sum::<usize>()))
    }

    fn projection_preservation(&self) -> Check {
        let pj = latent_project(&fixtures::latent_projection_a(), &NodeSet::from_labels(["X", "Y", "Z1", "Z2"]))
            .map_err(err)?;
        ensure(pj == fixtures::latent_projection_b(), || format!("figure projection differs:\n{pj}"))?;
        let graphs: Vec<Admg> = {
            let mut r = rng(self.seed ^ 0x8);
            (0..200)
                .map(|i| {
                    let latent = i % 4;
                    let observed = 3 + (i / 4) % (6 - latent);
                    random_dag(&mut r, observed, latent, 0.4)
                })
                .collect()
        };
        let totals = graphs
            .par_iter()
            .map(|g| {
                let obs = g.observed_nodes();
                let h = latent_project(g, &obs).map_err(err)?;
                let nodes: Vec<NodeId> = obs.into_iter().collect();
                let mut n = 0usize;
                for code in 0..4usize.pow(nodes.len() as u32) {
                    let mut sets = [NodeSet::new(), NodeSet::new(), NodeSet::new()];
                    let mut c = code;
                    for v in &nodes {
                        if c % 4 < 3 {
                            sets[c % 4].insert(v.clone());
                        }
                        c /= 4;
                    }
                    let [x, y, z] = &sets;
                    if x.is_empty() || y.is_empty() {
                        continue;
                    }
                    if d_separated(g, x, y, z).map_err(err)? != d_separated(&h, x, y, z).map_err(err)? {
                        return Err(format!("{x} vs {y} given {z} changes under projection of\n{g}"));
                    }
                    n += 1;
                }
                Ok(n)
            })
            .collect::<Result<Vec<usize>, String>>()?;
        Ok(format!("figure projection exact; {} graphs, {} triples preserved", graphs.len(), totals.iter().sum::<usize>()))
    }

    fn proof_replay(&self) -> Check {
        let corpus = self.corpus()?;
        let failures: Vec<String> = corpus
            .par_iter()
            .filter(|j| j.gfdc.holds)
            .filter_map(|j| match replay_main_proof(&j.instance.graph, &j.instance.query) {
                Ok(t) if t.valid() => None,
                Ok(t) => Some(format!("seed {}: {t}", j.instance.seed)),
                Err(e) => Some(format!("seed {}: {e}", j.instance.seed)),
            })
            .collect();
        ensure(failures.is_empty(), || failures.join("; "))?;
        let (mut replayed_figures, mut refused) = (0, Vec::new());
        for ne in fixtures::NON_EXAMPLES.iter() {
            let (g, q) = (ne.graph(), ne.query());
            if check_generalized_fdc(&g, &q).map_err(err)?.holds {
                let t = replay_main_proof(&g, &q).map_err(|e| format!("{}: {e}", ne.name))?;
                ensure(t.valid(), || format!("{}: {t}", ne.name))?;
                replayed_figures += 1;
            } else {
                let r = replay_main_proof(&g, &q);
                ensure(r == Err(DoCalcError::CriterionNotSatisfied), || format!("{}: replay ran without the criterion", ne.name))?;
                refused.push(ne.name);
            }
        }
        let replayed = corpus.iter().filter(|j| j.gfdc.holds).count();
        Ok(format!(
            "{replayed} corpus traces and {replayed_figures} figure traces valid; refused {} (criterion fails)",
            refused.join(", ")
        ))
    }

    fn pattern_equivalence(&self) -> Check {
        let corpus = self.corpus()?;
        let failures: Vec<String> = corpus
            .par_iter()
            .filter_map(|j| {
                let ii = j.gfdc.condition("ii").map(|c| c.holds).unwrap_or(false);
                match find_cond_ii_pattern(&j.instance.graph, &j.instance.query) {
                    Ok(w) if w.is_some() != ii => None,
                    Ok(w) => Some(format!("seed {}: (ii) holds = {ii}, pattern = {w:?}", j.instance.seed)),
                    Err(e) => Some(format!("seed {}: {e}", j.instance.seed)),
                }
            })
            .collect();
        ensure(failures.is_empty(), || failures.join("; "))?;
        let found = corpus.iter().filter(|j| !j.gfdc.condition("ii").map(|c| c.holds).unwrap_or(true)).count();
        Ok(format!("{} instances, {found} with a pattern, all consistent", corpus.len()))
    }

    fn convergence(&self) -> Check {
        let spec = PreimageSpec::uniform(1, Pattern::B, 1, 1).map_err(err)?;
        let base = observational_joint(&chain_model(1, Pattern::B).map_err(err)?).map_err(err)?;
        let mut dists = Vec::new();
        for n in [10u64, 100, 1000] {
            let j = observational_joint(&lifted_model(&spec, n).map_err(err)?).map_err(err)?;
            dists.push(j.max_abs_diff(&base).map_err(err)?);
        }
        ensure(dists.windows(2).all(|w| w[1] < w[0]), || "distance does not decrease".into())?;
        let bound = Rational::one() / Rational::from_integer(100.into());
        ensure(dists[2] < bound && !dists[2].is_zero(), || format!("distance at n=1000 is {}", dists[2]))?;
        let shown: Vec<String> = dists.iter().map(|d| format!("{:.2e}", crate::prob::Scalar::to_f64(d))).collect();
        Ok(format!("max-norm distance at n = 10, 100, 1000: {}", shown.join(", ")))
    }
}

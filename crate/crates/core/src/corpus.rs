//! Seeded random graphs, queries and strictly positive models.
//!
//! Every generator takes an explicit RNG; the same seed always reproduces the
//! same corpus.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::criteria::{check_generalized_fdc, check_pearl_fdc, Query};
use crate::graph::{Admg, GraphError, NodeId, NodeSet};
use crate::prob::{Cpt, ProbError};
use crate::{Model, Rational};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_220_714;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn observed_label(i: usize) -> String {
    format!("V{}", i + 1)
}

/// A DAG on `observed` nodes `V1..` and `latent` nodes `U1..`, each pair
/// joined with probability `p` along a random topological order.
pub fn random_dag<R: Rng>(rng: &mut R, observed: usize, latent: usize, p: f64) -> Admg {
    let mut labels: Vec<String> = (0..observed).map(observed_label).collect();
    labels.extend((0..latent).map(|i| format!("U{}", i + 1)));
    labels.shuffle(rng);
    let mut directed = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if rng.gen_bool(p) {
                directed.push((NodeId::from(labels[i].as_str()), NodeId::from(labels[j].as_str())));
            }
        }
    }
    let latent: Vec<NodeId> = (0..latent).map(|i| NodeId::from(format!("U{}", i + 1).as_str())).collect();
    Admg::new(labels.iter().map(|l| NodeId::from(l.as_str())), latent, directed, Vec::<(NodeId, NodeId)>::new())
        .expect("forward edges along an order form a DAG")
}

/// An ADMG on `n` observed nodes with directed edges along a random order
/// (probability `p_dir`) and bidirected edges between any pair (`p_bi`).
pub fn random_admg<R: Rng>(rng: &mut R, n: usize, p_dir: f64, p_bi: f64) -> Admg {
    let mut labels: Vec<NodeId> = (0..n).map(|i| NodeId::from(observed_label(i).as_str())).collect();
    labels.shuffle(rng);
    let (mut directed, mut bidirected) = (Vec::new(), Vec::new());
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p_dir) {
                directed.push((labels[i].clone(), labels[j].clone()));
            }
            if rng.gen_bool(p_bi) {
                bidirected.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Admg::new(labels, Vec::<NodeId>::new(), directed, bidirected).expect("forward edges along an order form an ADMG")
}

/// Replaces every bidirected edge `a <-> b` with a fresh latent parent of both.
pub fn latent_dag(g: &Admg) -> Result<Admg, GraphError> {
    let mut latent: Vec<NodeId> = g.latent_nodes().into_iter().collect();
    let mut nodes: Vec<NodeId> = g.nodes().cloned().collect();
    let mut directed = g.directed_edges();
    for (a, b) in g.bidirected_edges() {
        let mut label = format!("U_{a}_{b}");
        while nodes.iter().any(|n| n.as_str() == label) {
            label.push('\'');
        }
        let u = NodeId::new(label)?;
        directed.push((u.clone(), a));
        directed.push((u.clone(), b));
        nodes.push(u.clone());
        latent.push(u);
    }
    Admg::new(nodes, latent, directed, Vec::<(NodeId, NodeId)>::new())
}

/// Binary tables with every entry `k / Σ`, `k` drawn from `1..=max_numerator`.
pub fn random_model<R: Rng>(rng: &mut R, g: &Admg, max_numerator: u32) -> Result<Model, ProbError> {
    let mut cpts = Vec::new();
    for v in g.nodes() {
        let parents: Vec<NodeId> = g.parents(&NodeSet::from_iter([v.clone()]))?.into_iter().collect();
        let rows = (0..1usize << parents.len())
            .map(|_| {
                let a = rng.gen_range(1..=max_numerator as i64);
                let b = rng.gen_range(1..=max_numerator as i64);
                vec![Rational::new(a.into(), (a + b).into()), Rational::new(b.into(), (a + b).into())]
            })
            .collect();
        cpts.push(Cpt::new(v.clone(), vec!["0".into(), "1".into()], parents, rows));
    }
    Model::new(g.clone(), cpts)
}

/// Disjoint `x`, `y`, `z` over observed nodes, with `y` preferring descendants of `x`.
pub fn random_query<R: Rng>(rng: &mut R, g: &Admg) -> Option<Query> {
    let mut observed: Vec<NodeId> = g.observed_nodes().into_iter().collect();
    if observed.len() < 2 {
        return None;
    }
    observed.shuffle(rng);
    let nx = if observed.len() > 3 && rng.gen_bool(0.25) { 2 } else { 1 };
    let x: NodeSet = observed[..nx].iter().cloned().collect();
    let rest = &observed[nx..];
    let below = g.descendants(&x).ok()?;
    let pick = rest.iter().find(|n| below.contains(n) && rng.gen_bool(0.8)).unwrap_or(&rest[0]);
    let y = NodeSet::from_iter([pick.clone()]);
    let z = rest.iter().filter(|n| *n != pick && rng.gen_bool(0.5)).cloned().collect();
    Some(Query::new(x, y, z))
}

/// A query on `g` for which the generalized front-door criterion holds, found
/// by trying every `z` for random `(x, y)` in random order. A `z` on which
/// Pearl's criterion fails is preferred, so the corpus exercises the gap
/// between the two criteria.
pub fn gfdc_query<R: Rng>(rng: &mut R, g: &Admg, attempts: usize) -> Option<Query> {
    let mut fallback = None;
    for _ in 0..attempts {
        let base = random_query(rng, g)?;
        let mut pool: Vec<NodeId> = g.observed_nodes().difference(&base.x.union(&base.y)).into_iter().collect();
        pool.shuffle(rng);
        let mut masks: Vec<usize> = (0..1usize << pool.len()).collect();
        masks.shuffle(rng);
        for m in masks {
            let z = pool.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, n)| n.clone()).collect();
            let q = Query::new(base.x.clone(), base.y.clone(), z);
            if !check_generalized_fdc(g, &q).map(|r| r.holds).unwrap_or(false) {
                continue;
            }
            if !check_pearl_fdc(g, &q).map(|r| r.holds).unwrap_or(true) {
                return Some(q);
            }
            fallback.get_or_insert(q);
        }
    }
    fallback
}

/// One graph plus query of the criterion corpus.
#[derive(Clone, Debug)]
pub struct Instance {
    pub seed: u64,
    pub graph: Admg,
    pub query: Query,
}

/// `count` DAGs with up to 7 observed and 3 latent nodes. Every other
/// instance is steered towards a query satisfying the generalized criterion;
/// the rest use unconstrained random queries.
pub fn criterion_corpus(seed: u64, count: usize) -> Vec<Instance> {
    (0..count as u64)
        .map(|i| {
            let s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i);
            let mut r = rng(s);
            loop {
                let observed = r.gen_range(3..=7);
                let latent = r.gen_range(0..=3);
                let p = r.gen_range(0.25..0.6);
                let g = random_dag(&mut r, observed, latent, p);
                let q = if i % 2 == 0 { gfdc_query(&mut r, &g, 4) } else { random_query(&mut r, &g) };
                if let Some(query) = q {
                    return Instance { seed: s, graph: g, query };
                }
            }
        })
        .collect()
}

/// Every assignment of the values of `vars` (binary), as index maps.
pub fn binary_assignments(vars: &NodeSet) -> Vec<crate::prob::Assignment> {
    let vars: Vec<&NodeId> = vars.iter().collect();
    (0..1usize << vars.len())
        .map(|m| vars.iter().enumerate().map(|(i, v)| ((*v).clone(), m >> i & 1)).collect())
        .collect()
}

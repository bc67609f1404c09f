//! Latent projection onto a retained node set.
//!
//! The projection keeps a directed edge `a -> b` for every direct path from `a`
//! to `b` whose interior avoids the retained set, and a bidirected edge for
//! every trek (collider-free path with arrowheads at both ends) whose interior
//! avoids it. Existing bidirected edges behave as two-edge treks through an
//! implicit latent.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Admg, Edge, GraphError, NodeId, NodeSet};
use crate::paths::{FirstEdge, Path, PathError, PathSearch, Traversal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("latent node `{0}` cannot be retained")]
    KeepContainsLatent(NodeId),
    #[error("path endpoint `{0}` is not retained")]
    EndpointNotKept(NodeId),
    #[error("segment between `{from}` and `{to}` has a collider among dropped nodes")]
    SegmentNotProjectable { from: NodeId, to: NodeId },
}

/// `Pj(g, keep)`. The result has exactly the nodes of `keep`, all observed.
pub fn latent_project(g: &Admg, keep: &NodeSet) -> Result<Admg, ProjectionError> {
    let keep_mask = g.mask(keep)?;
    if let Some(l) = keep.iter().find(|n| g.is_latent(n)) {
        return Err(ProjectionError::KeepContainsLatent(l.clone()));
    }
    let n = g.len();
    let mut dir: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut bi: BTreeSet<(usize, usize)> = BTreeSet::new();
    for v in 0..n {
        dir.extend(g.children_of(v).iter().map(|&c| (v, c)));
        bi.extend(g.spouses_of(v).iter().filter(|&&s| s > v).map(|&s| (v, s)));
    }

    // Eliminating u: p -> u -> c gives p -> c, c1 <- u -> c2 gives c1 <-> c2,
    // s <-> u -> c gives s <-> c. Elimination order does not matter.
    for u in (0..n).filter(|&u| !keep_mask[u]) {
        let parents: Vec<usize> = dir.iter().filter(|e| e.1 == u).map(|e| e.0).collect();
        let children: Vec<usize> = dir.iter().filter(|e| e.0 == u).map(|e| e.1).collect();
        let spouses: Vec<usize> = bi
            .iter()
            .filter_map(|&(a, b)| if a == u { Some(b) } else if b == u { Some(a) } else { None })
            .collect();
        for &c in &children {
            for &p in &parents {
                dir.insert((p, c));
            }
            for &s in spouses.iter().chain(&children) {
                if s != c {
                    bi.insert((s.min(c), s.max(c)));
                }
            }
        }
        dir.retain(|&(a, b)| a != u && b != u);
        bi.retain(|&(a, b)| a != u && b != u);
    }

    let name = |i: usize| g.label(i).clone();
    Admg::new(
        keep.iter().cloned(),
        Vec::new(),
        dir.into_iter().map(|(a, b)| (name(a), name(b))),
        bi.into_iter().map(|(a, b)| (name(a), name(b))),
    )
    .map_err(Into::into)
}

/// A source-graph path justifying an edge of `Pj(g, keep)`: a direct path for
/// a directed edge, a trek for a bidirected one. `None` means the edge is not
/// induced by the projection.
pub fn projection_witness(g: &Admg, keep: &NodeSet, edge: &Edge) -> Result<Option<Path>, ProjectionError> {
    let keep_mask = g.mask(keep)?;
    let (a, b) = edge.endpoints();
    let (ai, bi) = (g.idx(a)?, g.idx(b)?);
    let single = |i: usize| {
        let mut m = vec![false; g.len()];
        m[i] = true;
        m
    };
    let mut search = PathSearch::new(g, single(ai), single(bi));
    search.avoid = Some(keep_mask);
    match edge {
        Edge::Directed(..) => {
            search.direct = true;
            Ok(search.first()?)
        }
        Edge::Bidirected(..) => {
            search.first = FirstEdge::Into;
            search.open_given(vec![false; g.len()]);
            search.last_into = true;
            Ok(search.first()?)
        }
    }
}

/// Replaces each maximal run of dropped nodes on `p` by the edge it induces.
pub fn project_path(g: &Admg, p: &Path, keep: &NodeSet) -> Result<Path, ProjectionError> {
    p.validate_in(g)?;
    for end in [p.first(), p.last()] {
        if !keep.contains(end) {
            return Err(ProjectionError::EndpointNotKept(end.clone()));
        }
    }
    let nodes = p.nodes();
    let steps = p.traversals();
    let mut out_nodes = vec![nodes[0].clone()];
    let mut out_steps = Vec::new();
    let mut start = 0;
    for j in 1..nodes.len() {
        if !keep.contains(&nodes[j]) {
            continue;
        }
        if (start + 1..j).any(|i| p.is_collider(i)) {
            return Err(ProjectionError::SegmentNotProjectable {
                from: nodes[start].clone(),
                to: nodes[j].clone(),
            });
        }
        out_steps.push(Traversal {
            head_left: steps[start].head_left,
            head_right: steps[j - 1].head_right,
        });
        out_nodes.push(nodes[j].clone());
        start = j;
    }
    Ok(Path::new(out_nodes, out_steps)?)
}

//! Constrained simple-path search shared by the criteria and the oracles.
//!
//! Partial paths grow one edge at a time in breadth-first layers, so the first
//! completed layer contains the shortest witnesses and the canonical one is its
//! minimum. Paths normally stop at the first target they reach: any valid path
//! through a target has a shorter valid prefix ending there. Searches that
//! reject direct paths must continue, since the prefix of a non-direct path
//! may be direct.

use super::{Path, PathError, Traversal, DEFAULT_PATH_CAP};
use crate::graph::Admg;

/// Constraint on the first edge of a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum FirstEdge {
    Any,
    /// Arrowhead at the first node.
    Into,
    /// No arrowhead at the first node.
    OutOf,
}

#[derive(Clone, Debug)]
pub(crate) struct PathSearch<'g> {
    g: &'g Admg,
    sources: Vec<bool>,
    targets: Vec<bool>,
    pub first: FirstEdge,
    /// No node after the first may be a source.
    pub proper: bool,
    /// Every traversal must point forward.
    pub direct: bool,
    /// Completed paths must not be direct.
    pub reject_direct: bool,
    /// Keep extending past targets.
    pub through_targets: bool,
    /// (conditioning set, its ancestors) for openness.
    open: Option<(Vec<bool>, Vec<bool>)>,
    /// Nodes barred from the interior.
    pub avoid: Option<Vec<bool>>,
    /// Completed paths must end with an arrowhead at the last node.
    pub last_into: bool,
    pub max_nodes: usize,
    pub cap: usize,
}

#[derive(Clone)]
struct Partial {
    nodes: Vec<usize>,
    steps: Vec<Traversal>,
}

impl<'g> PathSearch<'g> {
    pub fn new(g: &'g Admg, sources: Vec<bool>, targets: Vec<bool>) -> Self {
        PathSearch {
            g,
            sources,
            targets,
            first: FirstEdge::Any,
            proper: false,
            direct: false,
            reject_direct: false,
            through_targets: false,
            open: None,
            avoid: None,
            last_into: false,
            max_nodes: usize::MAX,
            cap: DEFAULT_PATH_CAP,
        }
    }

    pub fn open_given(&mut self, cond: Vec<bool>) -> &mut Self {
        let an = self.g.ancestors_mask(&cond);
        self.open = Some((cond, an));
        self
    }

    fn extensions(&self, p: &Partial, mut emit: impl FnMut(Partial, bool)) {
        let v = *p.nodes.last().expect("partial paths are non-empty");
        if p.nodes.len() >= self.max_nodes {
            return;
        }
        if p.nodes.len() > 1 {
            if let Some(avoid) = &self.avoid {
                if avoid[v] {
                    return;
                }
            }
        }
        for a in self.g.adjacent(v) {
            let w = a.node;
            if p.nodes.contains(&w) || (self.proper && self.sources[w]) {
                continue;
            }
            let step = Traversal { head_left: a.head_here, head_right: a.head_there };
            if self.direct && step != Traversal::FORWARD {
                continue;
            }
            match p.steps.last() {
                None => match self.first {
                    FirstEdge::Into if !a.head_here => continue,
                    FirstEdge::OutOf if a.head_here => continue,
                    _ => {}
                },
                Some(prev) => {
                    if let Some((cond, an)) = &self.open {
                        let collider = prev.head_right && a.head_here;
                        let ok = if collider { an[v] } else { !cond[v] };
                        if !ok {
                            continue;
                        }
                    }
                }
            }
            let mut next = p.clone();
            next.nodes.push(w);
            next.steps.push(step);
            let complete = self.targets[w]
                && (!self.last_into || a.head_there)
                && !(self.reject_direct && next.steps.iter().all(|&s| s == Traversal::FORWARD));
            emit(next, complete);
        }
    }

    fn keep_going(&self, p: &Partial) -> bool {
        let w = *p.nodes.last().unwrap();
        !self.targets[w] || self.through_targets || self.reject_direct
    }

    fn starts(&self) -> Vec<Partial> {
        (0..self.g.len())
            .filter(|&s| self.sources[s])
            .map(|s| Partial { nodes: vec![s], steps: Vec::new() })
            .collect()
    }

    /// Canonical (shortest, then lexicographically least) matching path.
    pub fn first(&self) -> Result<Option<Path>, PathError> {
        let mut layer = self.starts();
        let mut explored = 0usize;
        while !layer.is_empty() {
            let mut next = Vec::new();
            let mut best: Option<Partial> = None;
            for p in &layer {
                self.extensions(p, |q, complete| {
                    if complete {
                        let better = best
                            .as_ref()
                            .is_none_or(|b| (&q.nodes, &q.steps) < (&b.nodes, &b.steps));
                        if better {
                            best = Some(q.clone());
                        }
                    }
                    if self.keep_going(&q) {
                        next.push(q);
                    }
                });
            }
            if let Some(b) = best {
                return Ok(Some(Path::from_indices(self.g, &b.nodes, &b.steps)));
            }
            explored += next.len();
            if explored > self.cap {
                return Err(PathError::LimitExceeded(self.cap));
            }
            layer = next;
        }
        Ok(None)
    }

    /// Every matching path, in canonical order.
    pub fn all(&self) -> Result<Vec<Path>, PathError> {
        let mut out = Vec::new();
        let mut stack = self.starts();
        let mut overflow = false;
        while let Some(p) = stack.pop() {
            self.extensions(&p, |q, complete| {
                if complete {
                    out.push(Path::from_indices(self.g, &q.nodes, &q.steps));
                }
                if self.keep_going(&q) {
                    stack.push(q);
                }
            });
            if out.len() > self.cap {
                overflow = true;
                break;
            }
        }
        if overflow {
            return Err(PathError::LimitExceeded(self.cap));
        }
        out.sort();
        Ok(out)
    }
}

//! Line-oriented text format for graphs.
//!
//! ```text
//! # comment
//! node X
//! latent U
//! X -> Z
//! X <-> Y
//! ```
//!
//! Whitespace is insignificant around arrows, and nodes mentioned only by an
//! edge are declared as observed.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{is_valid_label, Admg, GraphError, NodeId};

/// Failure to read a graph file.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

fn label(line: usize, text: &str) -> Result<NodeId, ParseError> {
    let text = text.trim();
    if is_valid_label(text) {
        Ok(NodeId::from(text))
    } else if text.is_empty() {
        Err(syntax(line, "missing node label"))
    } else {
        Err(syntax(line, format!("invalid node label `{text}`")))
    }
}

pub(super) fn parse_graph(text: &str) -> Result<Admg, ParseError> {
    let mut nodes = Vec::new();
    let mut seen = BTreeSet::new();
    let mut latent = Vec::new();
    let mut directed = Vec::new();
    let mut bidirected = Vec::new();
    let mut declare = |n: &NodeId, nodes: &mut Vec<NodeId>| {
        if seen.insert(n.clone()) {
            nodes.push(n.clone());
        }
    };

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((a, b)) = line.split_once("<->") {
            let (a, b) = (label(line_no, a)?, label(line_no, b)?);
            declare(&a, &mut nodes);
            declare(&b, &mut nodes);
            bidirected.push((a, b));
        } else if let Some((a, b)) = line.split_once("->") {
            let (a, b) = (label(line_no, a)?, label(line_no, b)?);
            declare(&a, &mut nodes);
            declare(&b, &mut nodes);
            directed.push((a, b));
        } else {
            let mut words = line.split_whitespace();
            let keyword = words.next().unwrap_or_default();
            let is_latent = match keyword {
                "node" => false,
                "latent" => true,
                other => return Err(syntax(line_no, format!("unrecognised statement `{other}`"))),
            };
            let mut any = false;
            for w in words.flat_map(|w| w.split(',')).filter(|w| !w.is_empty()) {
                let n = label(line_no, w)?;
                declare(&n, &mut nodes);
                if is_latent {
                    latent.push(n);
                }
                any = true;
            }
            if !any {
                return Err(syntax(line_no, format!("`{keyword}` needs at least one label")));
            }
        }
    }
    Ok(Admg::new(nodes, latent, directed, bidirected)?)
}

//! Text format for models: a graph block followed by one table per node.
//!
//! ```text
//! X -> Z
//! latent U
//!
//! cpt X
//! domain 0 1
//! row : 1/2 1/2
//!
//! cpt Z | X
//! domain 0 1
//! row 0 : 3/4 1/4
//! row 1 : 1/4 3/4
//! ```
//!
//! Row labels are parent values in header order. Probabilities are exact
//! fractions or decimals. Printing then parsing reproduces the model exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::model::{decode, encode};
use super::{Cpt, DiscreteModel, ProbError, Scalar};
use crate::graph::{Admg, NodeId, ParseError};

struct RawCpt {
    line: usize,
    variable: NodeId,
    parents: Vec<NodeId>,
    domain: Option<Vec<String>>,
    rows: Vec<(usize, Vec<String>, Vec<String>)>,
}

fn err(line: usize, message: impl Into<String>) -> ProbError {
    ProbError::Parse { line, message: message.into() }
}

fn strip(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

pub fn parse_model<T: Scalar>(text: &str) -> Result<DiscreteModel<T>, ProbError> {
    let lines: Vec<&str> = text.lines().collect();
    let split = lines
        .iter()
        .position(|l| strip(l).split_whitespace().next() == Some("cpt"))
        .unwrap_or(lines.len());
    let graph: Admg = lines[..split].join("\n").parse().map_err(|e| match e {
        ParseError::Syntax { line, message } => err(line, message),
        ParseError::Graph(g) => ProbError::Graph(g),
    })?;

    let mut raws: Vec<RawCpt> = Vec::new();
    for (i, raw) in lines.iter().enumerate().skip(split) {
        let line_no = i + 1;
        let line = strip(raw);
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match keyword {
            "cpt" => {
                let (var, parents) = rest.split_once('|').unwrap_or((rest, ""));
                let var = var.trim();
                if var.is_empty() {
                    return Err(err(line_no, "`cpt` needs a variable"));
                }
                raws.push(RawCpt {
                    line: line_no,
                    variable: NodeId::new(var).map_err(|e| err(line_no, e.to_string()))?,
                    parents: parents
                        .split(|c: char| c.is_whitespace() || c == ',')
                        .filter(|s| !s.is_empty())
                        .map(NodeId::from)
                        .collect(),
                    domain: None,
                    rows: Vec::new(),
                });
            }
            "domain" | "row" => {
                let current = raws.last_mut().ok_or_else(|| err(line_no, format!("`{keyword}` outside a cpt block")))?;
                if keyword == "domain" {
                    if current.domain.is_some() {
                        return Err(err(line_no, "domain declared twice"));
                    }
                    current.domain = Some(rest.split_whitespace().map(String::from).collect());
                } else {
                    let (labels, probs) = rest.split_once(':').ok_or_else(|| err(line_no, "row needs `:`"))?;
                    current.rows.push((
                        line_no,
                        labels.split_whitespace().map(String::from).collect(),
                        probs.split_whitespace().map(String::from).collect(),
                    ));
                }
            }
            other => return Err(err(line_no, format!("unrecognised statement `{other}`"))),
        }
    }

    let domains: BTreeMap<NodeId, Vec<String>> = raws
        .iter()
        .map(|r| {
            let d = r.domain.clone().ok_or_else(|| err(r.line, format!("`{}` has no domain", r.variable)))?;
            Ok((r.variable.clone(), d))
        })
        .collect::<Result<_, ProbError>>()?;

    let mut cpts = Vec::new();
    for r in raws {
        let domain = domains[&r.variable].clone();
        let mut parent_domains = Vec::new();
        for p in &r.parents {
            parent_domains.push(domains.get(p).ok_or_else(|| err(r.line, format!("parent `{p}` has no table")))?);
        }
        let sizes: Vec<usize> = parent_domains.iter().map(|d| d.len()).collect();
        let mut rows: Vec<Option<Vec<T>>> = vec![None; sizes.iter().product()];
        for (line_no, labels, probs) in r.rows {
            if labels.len() != r.parents.len() {
                return Err(err(line_no, format!("expected {} parent values", r.parents.len())));
            }
            let mut idx = Vec::new();
            for ((label, dom), p) in labels.iter().zip(&parent_domains).zip(&r.parents) {
                idx.push(dom.iter().position(|d| d == label).ok_or_else(|| {
                    err(line_no, format!("value `{label}` is not in the domain of `{p}`"))
                })?);
            }
            let values = probs
                .iter()
                .map(|s| T::parse_value(s).ok_or_else(|| err(line_no, format!("bad probability `{s}`"))))
                .collect::<Result<Vec<T>, _>>()?;
            let slot = &mut rows[encode(&idx, &sizes)];
            if slot.is_some() {
                return Err(err(line_no, "duplicate row"));
            }
            *slot = Some(values);
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.ok_or_else(|| {
                    let missing: Vec<&str> =
                        decode(i, &sizes).iter().zip(&parent_domains).map(|(&v, d)| d[v].as_str()).collect();
                    err(r.line, format!("`{}` is missing row `{}`", r.variable, missing.join(" ")))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        cpts.push(Cpt::new(r.variable, domain, r.parents, rows));
    }
    DiscreteModel::new(graph, cpts)
}

pub fn write_model<T: Scalar>(m: &DiscreteModel<T>) -> String {
    let mut out = m.graph().to_string();
    for c in m.cpts() {
        out.push('\n');
        let _ = write!(out, "cpt {}", c.variable());
        if !c.parents().is_empty() {
            let ps: Vec<&str> = c.parents().iter().map(NodeId::as_str).collect();
            let _ = write!(out, " | {}", ps.join(" "));
        }
        let _ = writeln!(out, "\ndomain {}", c.domain().join(" "));
        let parent_domains: Vec<&[String]> = c.parents().iter().map(|p| m.domain(p).unwrap()).collect();
        let sizes: Vec<usize> = parent_domains.iter().map(|d| d.len()).collect();
        for (i, row) in c.rows().iter().enumerate() {
            let labels: Vec<&str> = decode(i, &sizes).iter().zip(&parent_domains).map(|(&v, d)| d[v].as_str()).collect();
            let probs: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "row {}: {}", labels.iter().map(|l| format!("{l} ")).collect::<String>(), probs.join(" "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    const COLLIDER: &str = "\
X -> Z
Y -> Z

cpt X
domain 0 1
row : 1/2 1/2

cpt Y
domain 0 1
row : 0.5 0.5

cpt Z | X Y
domain 0 1
row 1 1 : 1/4 3/4
row 0 0 : 3/4 1/4
row 0 1 : 1/2 1/2
row 1 0 : 1/2 1/2
";

    #[test]
    fn parses_and_round_trips() {
        let m: DiscreteModel<Rational> = parse_model(COLLIDER).unwrap();
        let z = m.cpt(&"Z".into()).unwrap();
        assert_eq!(z.rows()[0], vec![Rational::from_ratio(3, 4), Rational::from_ratio(1, 4)]);
        let text = write_model(&m);
        let again: DiscreteModel<Rational> = parse_model(&text).unwrap();
        assert_eq!(again, m);
        assert_eq!(write_model(&again), text);
    }

    #[test]
    fn float_models_parse_too() {
        let m: DiscreteModel<f64> = parse_model(COLLIDER).unwrap();
        assert_eq!(m.cpt(&"Z".into()).unwrap().rows()[3], vec![0.25, 0.75]);
    }

    #[test]
    fn reports_errors_with_lines() {
        let missing = COLLIDER.replace("row 1 0 : 1/2 1/2\n", "");
        assert!(matches!(parse_model::<Rational>(&missing), Err(ProbError::Parse { line: 12, .. })));
        let bad = COLLIDER.replace("0.5 0.5", "1/2 x");
        assert!(matches!(parse_model::<Rational>(&bad), Err(ProbError::Parse { line: 10, .. })));
        let unnormalised = COLLIDER.replace("0.5 0.5", "1/2 1/3");
        assert!(matches!(parse_model::<Rational>(&unnormalised), Err(ProbError::InvalidCpt(_))));
        assert!(matches!(parse_model::<Rational>("X -> \n"), Err(ProbError::Parse { line: 1, .. })));
    }
}

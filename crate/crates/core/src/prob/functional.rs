//! Identifying functionals evaluated on an observational joint.

use super::joint::{Assignment, JointTable};
use super::{ProbError, Scalar};
use crate::criteria::Query;
use crate::graph::NodeSet;

fn check<T: Scalar>(j: &JointTable<T>, q: &Query, xstar: &Assignment) -> Result<(), ProbError> {
    if q.x.is_empty() || q.y.is_empty() {
        return Err(ProbError::InvalidQuery("x and y must be non-empty".into()));
    }
    if !q.x.is_disjoint(&q.y) || !q.x.is_disjoint(&q.z) || !q.y.is_disjoint(&q.z) {
        return Err(ProbError::InvalidQuery("x, y and z must be pairwise disjoint".into()));
    }
    for v in q.all_nodes().iter() {
        j.domain(v)?;
    }
    let assigned: NodeSet = xstar.keys().collect();
    if assigned != q.x {
        return Err(ProbError::InvalidQuery(format!("x* must assign exactly {}", q.x)));
    }
    for (v, &i) in xstar {
        if i >= j.domain(v)?.len() {
            return Err(ProbError::ValueOutOfDomain { node: v.clone(), value: i.to_string() });
        }
    }
    Ok(())
}

fn merge(parts: &[&Assignment]) -> Assignment {
    parts.iter().flat_map(|a| a.iter().map(|(k, v)| (k.clone(), *v))).collect()
}

/// `Σ_z P(z | x*) Σ_x P(y | x, z) P(x)`, as a distribution over `y`.
///
/// Every `(x, z)` cell must have positive probability.
pub fn frontdoor_functional<T: Scalar>(
    j: &JointTable<T>,
    q: &Query,
    xstar: &Assignment,
) -> Result<JointTable<T>, ProbError> {
    check(j, q, xstar)?;
    let m = j.marginal(&q.all_nodes())?;
    let pxz = m.marginal(&q.x.union(&q.z))?;
    if !pxz.is_strictly_positive() {
        return Err(ProbError::NonPositiveDistribution);
    }
    let px = m.marginal(&q.x)?;
    let pz = m.marginal(&q.z)?;
    let py = m.marginal(&q.y)?;
    let px_star = px.at(xstar)?.clone();

    let mut weights = Vec::with_capacity(py.len());
    for (ya, _) in py.cells() {
        let mut total = T::zero();
        for (za, _) in pz.cells() {
            let p_z_given_xstar = pxz.at(&merge(&[xstar, &za]))?.clone() / px_star.clone();
            let mut inner = T::zero();
            for (xa, p_x) in px.cells() {
                let xz = merge(&[&xa, &za]);
                let p_y_given_xz = m.at(&merge(&[&xz, &ya]))?.clone() / pxz.at(&xz)?.clone();
                inner = inner + p_y_given_xz * p_x.clone();
            }
            total = total + p_z_given_xstar * inner;
        }
        weights.push(total);
    }
    JointTable::new(py.variables().map(|v| (v.clone(), py.domain(v).unwrap().to_vec())).collect(), weights)
}

/// `Σ_z P(y | x*, z) P(z)`, as a distribution over `y`.
///
/// Every `(x*, z)` cell must have positive probability.
pub fn adjustment_functional<T: Scalar>(
    j: &JointTable<T>,
    q: &Query,
    xstar: &Assignment,
) -> Result<JointTable<T>, ProbError> {
    check(j, q, xstar)?;
    let m = j.marginal(&q.all_nodes())?;
    let pxz = m.marginal(&q.x.union(&q.z))?;
    let pz = m.marginal(&q.z)?;
    let py = m.marginal(&q.y)?;
    for (za, _) in pz.cells() {
        if pxz.at(&merge(&[xstar, &za]))?.is_zero() {
            return Err(ProbError::NonPositiveDistribution);
        }
    }
    let mut weights = Vec::with_capacity(py.len());
    for (ya, _) in py.cells() {
        let mut total = T::zero();
        for (za, p_z) in pz.cells() {
            let xz = merge(&[xstar, &za]);
            let cond = m.at(&merge(&[&xz, &ya]))?.clone() / pxz.at(&xz)?.clone();
            total = total + cond * p_z.clone();
        }
        weights.push(total);
    }
    JointTable::new(py.variables().map(|v| (v.clone(), py.domain(v).unwrap().to_vec())).collect(), weights)
}

//! Degrees of intersection, union and inclusion, and the rules that weight
//! each product by them.
//!
//! Degrees are ratios of DSm cardinalities under the model. Weighted results
//! are normalized by the total weighted mass.

use crate::error::{Error, Result};
use crate::lattice::{Element, Model};
use crate::mass::PreciseMass;

use super::engine::{classify, for_each_tuple, product, Transfer};
use super::{check_pair, normalize_weighted, FusionReport, RuleId, S3Target};

/// `C(X1∩X2) / C(X1∪X2)`; 1 when both are empty.
pub fn degree_of_intersection(model: &Model, x1: Element, x2: Element) -> f64 {
    let cu = model.cardinality(x1 | x2);
    if cu == 0 {
        return 1.0;
    }
    f64::from(model.cardinality(x1 & x2)) / f64::from(cu)
}

/// `(C(X1∪X2) - C(X1∩X2)) / C(X1∪X2)`; 0 when both are empty.
pub fn degree_of_union(model: &Model, x1: Element, x2: Element) -> f64 {
    let cu = model.cardinality(x1 | x2);
    if cu == 0 {
        return 0.0;
    }
    f64::from(cu - model.cardinality(x1 & x2)) / f64::from(cu)
}

/// `C(X1) / C(X2)` for `X1 ⊆ X2`; `d(∅ ⊆ ∅) = 1`.
pub fn degree_of_inclusion(model: &Model, x1: Element, x2: Element) -> Result<f64> {
    if !model.reduce(x1).is_subset_of(model.reduce(x2)) {
        return Err(Error::NotASubset);
    }
    let c2 = model.cardinality(x2);
    if c2 == 0 {
        return Ok(1.0);
    }
    Ok(f64::from(model.cardinality(x1)) / f64::from(c2))
}

fn finish(rule: RuleId, model: &Model, weighted: PreciseMass, k12: f64) -> Result<FusionReport<f64>> {
    Ok(FusionReport {
        result: normalize_weighted(weighted)?,
        conflict: k12,
        warnings: Vec::new(),
        rule,
        model: model.clone(),
    })
}

/// Disjunctive rule with each product weighted by the degree of union.
pub fn disjunctive_improved(model: &Model, sources: &[PreciseMass]) -> Result<FusionReport<f64>> {
    check_pair(model, sources)?;
    let mut out = PreciseMass::new(model.frame());
    let mut k12 = 0.0;
    for_each_tuple(sources, |xs, vs| {
        let p = product(vs);
        let (x, y) = (xs[0], xs[1]);
        if model.is_empty_element(x & y) {
            k12 += p;
        }
        let w = degree_of_union(model, x, y);
        let target = model.reduce(x | y);
        if w > 0.0 && !target.is_empty() {
            out.accumulate(target, w * p);
        }
        Ok(())
    })?;
    finish(RuleId::DisjunctiveImproved, model, out, k12)
}

/// Classic DSm rule with each product weighted by the degree of intersection.
pub fn dsmc_improved(model: &Model, sources: &[PreciseMass]) -> Result<FusionReport<f64>> {
    check_pair(model, sources)?;
    let mut out = PreciseMass::new(model.frame());
    let mut k12 = 0.0;
    for_each_tuple(sources, |xs, vs| {
        let p = product(vs);
        let (x, y) = (xs[0], xs[1]);
        let target = model.reduce(x & y);
        if target.is_empty() {
            k12 += p;
            return Ok(());
        }
        out.accumulate(target, degree_of_intersection(model, x, y) * p);
        Ok(())
    })?;
    finish(RuleId::DsmcImproved, model, out, k12)
}

/// Hybrid DSm rule with conjunctive products weighted by the degree of
/// intersection, conflicting ones by the degree of union, and all-empty ones
/// left unweighted.
pub fn dsmh_improved(model: &Model, sources: &[PreciseMass]) -> Result<FusionReport<f64>> {
    check_pair(model, sources)?;
    let mut out = PreciseMass::new(model.frame());
    let mut k12 = 0.0;
    for_each_tuple(sources, |xs, vs| {
        let p = product(vs);
        let (x, y) = (xs[0], xs[1]);
        let (target, transfer) = classify(model, xs, S3Target::default())?;
        let w = match transfer {
            Transfer::Conjunctive => degree_of_intersection(model, x, y),
            Transfer::AllEmpty => 1.0,
            Transfer::Conflicting => degree_of_union(model, x, y),
        };
        if transfer != Transfer::Conjunctive {
            k12 += p;
        }
        out.accumulate(target, w * p);
        Ok(())
    })?;
    finish(RuleId::DsmhImproved, model, out, k12)
}

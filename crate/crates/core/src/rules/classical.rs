//! Dempster, Smets, Yager, Dubois & Prade and the disjunctive rule.

use crate::error::{Error, Result};
use crate::lattice::{Element, Model};
use crate::mass::PreciseMass;

use super::engine::{for_each_tuple, product};
use super::{check_pair, check_precise, FusionReport, RuleId, Warning};

/// Totals within this distance of 1 count as total conflict.
const TOTAL_CONFLICT_EPS: f64 = 1e-12;

fn require_shafer(model: &Model) -> Result<()> {
    if model.is_shafer_compatible() {
        Ok(())
    } else {
        Err(Error::ModelNotShafer)
    }
}

/// Conjunctive consensus on reduced intersections. Returns the nonconflicting
/// part and `k12`.
fn reduced_conjunctive(model: &Model, sources: &[PreciseMass]) -> Result<(PreciseMass, f64)> {
    let n = model.frame().len();
    let mut out = PreciseMass::new(model.frame());
    let mut k12 = 0.0;
    for_each_tuple(sources, |xs, vs| {
        let p = product(vs);
        let target = model.reduce(xs.iter().fold(Element::full(n), |acc, &x| acc & x));
        if target.is_empty() {
            k12 += p;
        } else {
            out.accumulate(target, p);
        }
        Ok(())
    })?;
    Ok((out, k12))
}

fn report(rule: RuleId, model: &Model, result: PreciseMass, conflict: f64) -> FusionReport<f64> {
    FusionReport {
        result,
        conflict,
        warnings: Vec::new(),
        rule,
        model: model.clone(),
    }
}

/// Dempster's rule: conjunctive consensus normalized by `1 - k12`.
pub fn dempster(model: &Model, sources: &[PreciseMass]) -> Result<FusionReport<f64>> {
    check_precise(model, sources)?;
    require_shafer(model)?;
    let (conj, k12) = reduced_conjunctive(model, sources)?;
    let denom = 1.0 - k12;
    if denom <= TOTAL_CONFLICT_EPS {
        return Err(Error::TotalConflict);
    }
    Ok(report(RuleId::Dempster, model, conj.map(|v| v / denom), k12))
}

/// Smets' rule: the conflicting mass stays on `∅`.
pub fn smets(model: &Model, sources: &[PreciseMass]) -> Result<FusionReport<f64>> {
    check_precise(model, sources)?;
    require_shafer(model)?;
    let (conj, k12) = reduced_conjunctive(model, sources)?;
    let mut result = conj.with_empty_focal(true);
    if k12 > 0.0 {
        result.set(model.frame().empty(), k12)?;
    }
    Ok(report(RuleId::Smets, model, result, k12))
}

/// Yager's rule: the conflicting mass goes to the reduced total ignorance.
pub fn yager(model: &Model, sources: &[PreciseMass]) -> Result<FusionReport<f64>> {
    check_precise(model, sources)?;
    require_shafer(model)?;
    let (mut result, k12) = reduced_conjunctive(model, sources)?;
    if k12 > 0.0 {
        let it = model.total_ignorance()?;
        if it.is_empty() {
            return Err(Error::DegenerateModel);
        }
        result.accumulate(it, k12);
    }
    Ok(report(RuleId::Yager, model, result, k12))
}

/// Dubois & Prade's rule for two sources. Products whose intersection and
/// union are both empty under the model are dropped with a warning.
pub fn dubois_prade(model: &Model, sources: &[PreciseMass]) -> Result<FusionReport<f64>> {
    check_pair(model, sources)?;
    let mut result = PreciseMass::new(model.frame());
    let mut k12 = 0.0;
    for_each_tuple(sources, |xs, vs| {
        let p = product(vs);
        let meet = model.reduce(xs[0] & xs[1]);
        if !meet.is_empty() {
            result.accumulate(meet, p);
            return Ok(());
        }
        k12 += p;
        let join = model.reduce(xs[0] | xs[1]);
        if !join.is_empty() {
            result.accumulate(join, p);
        }
        Ok(())
    })?;
    let mut warnings = Vec::new();
    let total = result.total();
    if 1.0 - total > crate::mass::SUM_TOLERANCE {
        warnings.push(Warning::Subnormal { total });
    }
    Ok(FusionReport {
        result,
        conflict: k12,
        warnings,
        rule: RuleId::DuboisPrade,
        model: model.clone(),
    })
}

/// Disjunctive rule: each product goes to the union of its components, or to
/// the total ignorance when that union is empty under the model.
pub fn disjunctive(model: &Model, sources: &[PreciseMass]) -> Result<FusionReport<f64>> {
    check_precise(model, sources)?;
    let n = model.frame().len();
    let mut result = PreciseMass::new(model.frame());
    let mut k12 = 0.0;
    for_each_tuple(sources, |xs, vs| {
        let p = product(vs);
        let meet = xs.iter().fold(Element::full(n), |acc, &x| acc & x);
        if model.is_empty_element(meet) {
            k12 += p;
        }
        let mut join = model.reduce(xs.iter().fold(Element::empty(n), |acc, &x| acc | x));
        if join.is_empty() {
            join = model.total_ignorance()?;
            if join.is_empty() {
                return Err(Error::DegenerateModel);
            }
        }
        result.accumulate(join, p);
        Ok(())
    })?;
    Ok(report(RuleId::Disjunctive, model, result, k12))
}

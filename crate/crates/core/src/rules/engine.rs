//! The conjunctive core shared by the classic and hybrid DSm rules, generic
//! over the mass value type.
//!
//! Tuples of focal elements are visited in a fixed order (the last source
//! varies fastest) and products are folded left to right, so precise and
//! point-lifted imprecise runs perform the same arithmetic.

use crate::error::{Error, Result};
use crate::lattice::{component_union, CanonicalForm, Element, Model};
use crate::mass::{Assignment, ImpreciseMass, MassValue, PreciseMass};

use super::{admissibility_warnings, check_precise, check_sources, FusionReport, RuleId, S3Target};

/// Which term of the hybrid rule a tuple contributes to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Transfer {
    /// The intersection is nonempty under the model.
    Conjunctive,
    /// Every component is empty under the model.
    AllEmpty,
    /// The intersection is empty but some component is not.
    Conflicting,
}

fn u_or_empty(x: Element) -> Element {
    component_union(x).unwrap_or(x)
}

/// Target of a tuple under the hybrid rule, with the term it belongs to.
pub(crate) fn classify(model: &Model, xs: &[Element], s3: S3Target) -> Result<(Element, Transfer)> {
    let n = model.frame().len();
    let meet = xs.iter().fold(Element::full(n), |acc, &x| acc & x);
    let reduced = model.reduce(meet);
    if !reduced.is_empty() {
        return Ok((reduced, Transfer::Conjunctive));
    }
    let union_of_u = xs
        .iter()
        .fold(Element::empty(n), |acc, &x| acc | u_or_empty(x));
    let fallback = || -> Result<Element> {
        let u = model.reduce(union_of_u);
        if !u.is_empty() {
            return Ok(u);
        }
        let it = model.total_ignorance()?;
        if it.is_empty() {
            Err(Error::DegenerateModel)
        } else {
            Ok(it)
        }
    };
    if xs.iter().all(|&x| model.is_empty_element(x)) {
        return Ok((fallback()?, Transfer::AllEmpty));
    }
    let target = match s3 {
        S3Target::CanonicalUnion => {
            let c = CanonicalForm::of_bits(meet).expand();
            model.reduce(u_or_empty(c))
        }
        S3Target::PlainUnion => {
            model.reduce(xs.iter().fold(Element::empty(n), |acc, &x| acc | x))
        }
    };
    let target = if target.is_empty() { fallback()? } else { target };
    Ok((target, Transfer::Conflicting))
}

/// Visit every tuple of focal elements, one per source.
pub(crate) fn for_each_tuple<V, F>(sources: &[Assignment<V>], mut f: F) -> Result<()>
where
    V: MassValue,
    F: FnMut(&[Element], &[&V]) -> Result<()>,
{
    let focal: Vec<Vec<(Element, &V)>> = sources.iter().map(|m| m.focal().collect()).collect();
    if focal.iter().any(Vec::is_empty) {
        return Ok(());
    }
    let k = focal.len();
    let mut idx = vec![0usize; k];
    let mut xs = vec![Element::empty(0); k];
    let mut vs: Vec<&V> = Vec::with_capacity(k);
    loop {
        vs.clear();
        for (i, &j) in idx.iter().enumerate() {
            xs[i] = focal[i][j].0;
            vs.push(focal[i][j].1);
        }
        f(&xs, &vs)?;
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < focal[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

pub(crate) fn product<V: MassValue>(vs: &[&V]) -> V {
    vs[1..].iter().fold(vs[0].clone(), |acc, v| acc.product(v))
}

/// The hybrid rule over any value type. Returns the fused assignment and `k12`.
pub(crate) fn hybrid_core<V: MassValue>(
    model: &Model,
    sources: &[Assignment<V>],
    s3: S3Target,
) -> Result<(Assignment<V>, V)> {
    let mut out = Assignment::new(model.frame());
    let mut conflict = V::zero();
    for_each_tuple(sources, |xs, vs| {
        let p = product(vs);
        let (target, transfer) = classify(model, xs, s3)?;
        if transfer != Transfer::Conjunctive {
            conflict = conflict.sum(&p);
        }
        out.accumulate(target, p);
        Ok(())
    })?;
    Ok((out, conflict))
}

/// Classic DSm rule: the conjunctive consensus on the free model.
pub fn dsm_classic(sources: &[PreciseMass]) -> Result<FusionReport<f64>> {
    let model = free_model(sources)?;
    check_precise(&model, sources)?;
    let (result, conflict) = hybrid_core(&model, sources, S3Target::default())?;
    Ok(FusionReport {
        result,
        conflict,
        warnings: Vec::new(),
        rule: RuleId::DsmClassic,
        model,
    })
}

/// Hybrid DSm rule with the default transfer of conflicting tuples.
pub fn dsm_hybrid(model: &Model, sources: &[PreciseMass]) -> Result<FusionReport<f64>> {
    dsm_hybrid_with(model, sources, S3Target::default())
}

/// Hybrid DSm rule with an explicit target for conflicting tuples.
pub fn dsm_hybrid_with(model: &Model, sources: &[PreciseMass], s3: S3Target) -> Result<FusionReport<f64>> {
    check_precise(model, sources)?;
    let (result, conflict) = hybrid_core(model, sources, s3)?;
    Ok(FusionReport {
        result,
        conflict,
        warnings: Vec::new(),
        rule: RuleId::DsmHybrid,
        model: model.clone(),
    })
}

/// Classic DSm rule on set-valued masses (`⊡` for products, `⊞` for sums).
pub fn dsm_classic_imprecise(sources: &[ImpreciseMass]) -> Result<FusionReport<crate::SubunitarySet>> {
    let model = free_model(sources)?;
    check_sources(&model, sources)?;
    let (result, conflict) = hybrid_core(&model, sources, S3Target::default())?;
    Ok(FusionReport {
        result,
        conflict,
        warnings: admissibility_warnings(sources),
        rule: RuleId::DsmClassic,
        model,
    })
}

/// Hybrid DSm rule on set-valued masses.
pub fn dsm_hybrid_imprecise(
    model: &Model,
    sources: &[ImpreciseMass],
    s3: S3Target,
) -> Result<FusionReport<crate::SubunitarySet>> {
    check_sources(model, sources)?;
    let (result, conflict) = hybrid_core(model, sources, s3)?;
    Ok(FusionReport {
        result,
        conflict,
        warnings: admissibility_warnings(sources),
        rule: RuleId::DsmHybrid,
        model: model.clone(),
    })
}

fn free_model<V: MassValue>(sources: &[Assignment<V>]) -> Result<Model> {
    match sources.first() {
        Some(m) => Ok(Model::free(m.frame())),
        None => Err(Error::FewerThanTwoSources { got: 0 }),
    }
}

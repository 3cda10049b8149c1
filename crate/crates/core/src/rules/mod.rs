//! Combination rules.
//!
//! Every rule returns a [`FusionReport`] carrying the fused assignment, the
//! conflict mass `k12` (total product mass whose intersection is empty under
//! the model, before any transfer or normalization) and any warnings.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{Element, Model};
use crate::mass::{Assignment, ImpreciseMass, MassValue, PreciseMass};

mod classical;
pub(crate) mod engine;
mod improved;
mod tnorm;

pub use classical::{dempster, disjunctive, dubois_prade, smets, yager};
pub use engine::{dsm_classic, dsm_classic_imprecise, dsm_hybrid, dsm_hybrid_imprecise, dsm_hybrid_with};
pub use improved::{
    degree_of_inclusion, degree_of_intersection, degree_of_union, disjunctive_improved, dsmc_improved,
    dsmh_improved,
};
pub use tnorm::{tconorm_fusion, tnorm_fusion, Norm};

/// Where the hybrid rule sends the mass of a conflicting tuple whose
/// components are not all empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum S3Target {
    /// `u(c(X1 ∩ … ∩ Xk))`: the union of the hypotheses in the canonical form
    /// of the intersection.
    #[default]
    CanonicalUnion,
    /// `X1 ∪ … ∪ Xk`.
    PlainUnion,
}

/// A combination rule identifier, e.g. `dsm_hybrid` or `tnorm:min`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleId {
    DsmClassic,
    DsmHybrid,
    Dempster,
    Smets,
    Yager,
    DuboisPrade,
    Disjunctive,
    DisjunctiveImproved,
    DsmcImproved,
    DsmhImproved,
    TNorm(Norm),
    TConorm(Norm),
}

impl RuleId {
    /// The rules compared side by side by the CLI's compare mode.
    pub const COMPARISON: [RuleId; 6] = [
        RuleId::DsmClassic,
        RuleId::Dempster,
        RuleId::Smets,
        RuleId::Yager,
        RuleId::DuboisPrade,
        RuleId::DsmHybrid,
    ];

    pub const ALL: [RuleId; 16] = [
        RuleId::DsmClassic,
        RuleId::DsmHybrid,
        RuleId::Dempster,
        RuleId::Smets,
        RuleId::Yager,
        RuleId::DuboisPrade,
        RuleId::Disjunctive,
        RuleId::DisjunctiveImproved,
        RuleId::DsmcImproved,
        RuleId::DsmhImproved,
        RuleId::TNorm(Norm::Algebraic),
        RuleId::TNorm(Norm::Bounded),
        RuleId::TNorm(Norm::MinMax),
        RuleId::TConorm(Norm::Algebraic),
        RuleId::TConorm(Norm::Bounded),
        RuleId::TConorm(Norm::MinMax),
    ];

    /// Rules defined for exactly two sources.
    pub fn is_pairwise(self) -> bool {
        matches!(
            self,
            RuleId::DuboisPrade
                | RuleId::DisjunctiveImproved
                | RuleId::DsmcImproved
                | RuleId::DsmhImproved
                | RuleId::TNorm(_)
                | RuleId::TConorm(_)
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::DsmClassic => f.write_str("dsm_classic"),
            RuleId::DsmHybrid => f.write_str("dsm_hybrid"),
            RuleId::Dempster => f.write_str("dempster"),
            RuleId::Smets => f.write_str("smets"),
            RuleId::Yager => f.write_str("yager"),
            RuleId::DuboisPrade => f.write_str("dubois_prade"),
            RuleId::Disjunctive => f.write_str("disjunctive"),
            RuleId::DisjunctiveImproved => f.write_str("disjunctive_improved"),
            RuleId::DsmcImproved => f.write_str("dsmc_improved"),
            RuleId::DsmhImproved => f.write_str("dsmh_improved"),
            RuleId::TNorm(n) => write!(f, "tnorm:{n}"),
            RuleId::TConorm(n) => write!(f, "tconorm:{n}"),
        }
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, param) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let bad = || Error::Parse {
            column: 1,
            message: format!("unknown rule {s:?}"),
        };
        let norm = || -> Result<Norm> { param.map_or(Ok(Norm::default()), str::parse) };
        let rule = match name {
            "tnorm" => return Ok(RuleId::TNorm(norm()?)),
            "tconorm" => return Ok(RuleId::TConorm(norm()?)),
            "dsm_classic" | "dsmc" => RuleId::DsmClassic,
            "dsm_hybrid" | "dsmh" => RuleId::DsmHybrid,
            "dempster" => RuleId::Dempster,
            "smets" => RuleId::Smets,
            "yager" => RuleId::Yager,
            "dubois_prade" => RuleId::DuboisPrade,
            "disjunctive" => RuleId::Disjunctive,
            "disjunctive_improved" => RuleId::DisjunctiveImproved,
            "dsmc_improved" => RuleId::DsmcImproved,
            "dsmh_improved" => RuleId::DsmhImproved,
            _ => return Err(bad()),
        };
        if param.is_some() {
            return Err(bad());
        }
        Ok(rule)
    }
}

/// Non-fatal conditions noticed while fusing.
#[derive(Clone, Debug, PartialEq)]
pub enum Warning {
    /// Output masses sum to less than one.
    Subnormal { total: f64 },
    /// Source `index` (0-based) is an imprecise mass that is not admissible.
    InadmissibleSource { index: usize },
    /// The rule works on the free model and ignored the given constraints.
    ModelIgnored,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::Subnormal { total } => write!(f, "subnormal output: masses sum to {total:.6}"),
            Warning::InadmissibleSource { index } => {
                write!(f, "source {} is not admissible", index + 1)
            }
            Warning::ModelIgnored => f.write_str("rule uses the free model; constraints ignored"),
        }
    }
}

/// The outcome of a combination.
#[derive(Clone, Debug, PartialEq)]
pub struct FusionReport<V> {
    pub result: Assignment<V>,
    /// Product mass committed to model-empty intersections before transfer.
    pub conflict: V,
    pub warnings: Vec<Warning>,
    pub rule: RuleId,
    pub model: Model,
}

impl<V: MassValue> FusionReport<V> {
    /// The fused value of `x` after reduction under the report's model.
    pub fn value(&self, x: Element) -> Option<&V> {
        self.result.get(self.model.reduce(x))
    }
}

impl FusionReport<f64> {
    /// `m(x)` after reduction under the report's model, zero when absent.
    pub fn mass(&self, x: Element) -> f64 {
        self.value(x).copied().unwrap_or(0.0)
    }
}

/// Shared argument checks.
pub(crate) fn check_sources<V: MassValue>(model: &Model, sources: &[Assignment<V>]) -> Result<()> {
    if sources.len() < 2 {
        return Err(Error::FewerThanTwoSources { got: sources.len() });
    }
    if sources.iter().any(|m| m.frame() != model.frame()) {
        return Err(Error::FrameMismatch);
    }
    Ok(())
}

pub(crate) fn check_precise(model: &Model, sources: &[PreciseMass]) -> Result<()> {
    check_sources(model, sources)?;
    for m in sources {
        m.validate()?;
    }
    Ok(())
}

pub(crate) fn check_pair(model: &Model, sources: &[PreciseMass]) -> Result<()> {
    check_precise(model, sources)?;
    if sources.len() != 2 {
        return Err(Error::RequiresTwoSources { got: sources.len() });
    }
    Ok(())
}

pub(crate) fn admissibility_warnings(sources: &[ImpreciseMass]) -> Vec<Warning> {
    sources
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_admissible())
        .map(|(index, _)| Warning::InadmissibleSource { index })
        .collect()
}

/// Run any precise rule by identifier.
pub fn fuse(rule: RuleId, model: &Model, sources: &[PreciseMass]) -> Result<FusionReport<f64>> {
    check_sources(model, sources)?;
    match rule {
        RuleId::DsmClassic => {
            let mut report = dsm_classic(sources)?;
            if model.kind() != crate::lattice::ModelKind::Free {
                report.warnings.push(Warning::ModelIgnored);
            }
            Ok(report)
        }
        RuleId::DsmHybrid => dsm_hybrid(model, sources),
        RuleId::Dempster => dempster(model, sources),
        RuleId::Smets => smets(model, sources),
        RuleId::Yager => yager(model, sources),
        RuleId::DuboisPrade => dubois_prade(model, sources),
        RuleId::Disjunctive => disjunctive(model, sources),
        RuleId::DisjunctiveImproved => disjunctive_improved(model, sources),
        RuleId::DsmcImproved => dsmc_improved(model, sources),
        RuleId::DsmhImproved => dsmh_improved(model, sources),
        RuleId::TNorm(norm) | RuleId::TConorm(norm) => {
            let mut report = if matches!(rule, RuleId::TNorm(_)) {
                tnorm_fusion(norm, sources)?
            } else {
                tconorm_fusion(norm, sources)?
            };
            if model.kind() != crate::lattice::ModelKind::Free {
                report.warnings.push(Warning::ModelIgnored);
            }
            Ok(report)
        }
    }
}

/// Sum `weight · product` per target and divide by the total weighted mass.
pub(crate) fn normalize_weighted(mut result: PreciseMass) -> Result<PreciseMass> {
    let total = result.total();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::DegenerateNormalization);
    }
    result = result.map(|v| v / total);
    Ok(result)
}

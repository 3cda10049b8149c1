//! T-norm and T-conorm fusion on the free model.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::Model;
use crate::mass::PreciseMass;

use super::engine::for_each_tuple;
use super::{check_pair, normalize_weighted, FusionReport, RuleId};

/// Family of fuzzy operator. As a T-norm: `xy`, `max(0, x+y-1)`, `min(x,y)`.
/// As a T-conorm: `x+y-xy`, `min(1, x+y)`, `max(x,y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Norm {
    Algebraic,
    Bounded,
    #[default]
    MinMax,
}

impl Norm {
    pub fn tnorm(self, x: f64, y: f64) -> f64 {
        match self {
            Norm::Algebraic => x * y,
            Norm::Bounded => (x + y - 1.0).max(0.0),
            Norm::MinMax => x.min(y),
        }
    }

    pub fn tconorm(self, x: f64, y: f64) -> f64 {
        match self {
            Norm::Algebraic => x + y - x * y,
            Norm::Bounded => (x + y).min(1.0),
            Norm::MinMax => x.max(y),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::Algebraic => "algebraic",
            Norm::Bounded => "bounded",
            Norm::MinMax => "minmax",
        })
    }
}

impl FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "algebraic" => Ok(Norm::Algebraic),
            "bounded" => Ok(Norm::Bounded),
            "minmax" | "min" | "max" | "default" => Ok(Norm::MinMax),
            other => Err(Error::Parse {
                column: 1,
                message: format!("unknown norm {other:?}"),
            }),
        }
    }
}

fn pair_model(sources: &[PreciseMass]) -> Result<Model> {
    sources
        .first()
        .map(|m| Model::free(m.frame()))
        .ok_or(Error::FewerThanTwoSources { got: 0 })
}

/// `m(A) = Σ_{X∩Y=A} Tn(m1(X), m2(Y))` over focal pairs. Every norm except
/// the algebraic one is normalized afterwards.
pub fn tnorm_fusion(norm: Norm, sources: &[PreciseMass]) -> Result<FusionReport<f64>> {
    let model = pair_model(sources)?;
    check_pair(&model, sources)?;
    let mut out = PreciseMass::new(model.frame());
    for_each_tuple(sources, |xs, vs| {
        out.accumulate(xs[0] & xs[1], norm.tnorm(*vs[0], *vs[1]));
        Ok(())
    })?;
    let result = match norm {
        Norm::Algebraic => out,
        _ => normalize_weighted(out)?,
    };
    Ok(FusionReport {
        result,
        conflict: 0.0,
        warnings: Vec::new(),
        rule: RuleId::TNorm(norm),
        model,
    })
}

/// `m(A) = Σ_{X∪Y=A} Tc(m1(X), m2(Y))` over focal pairs, normalized.
pub fn tconorm_fusion(norm: Norm, sources: &[PreciseMass]) -> Result<FusionReport<f64>> {
    let model = pair_model(sources)?;
    check_pair(&model, sources)?;
    let mut out = PreciseMass::new(model.frame());
    for_each_tuple(sources, |xs, vs| {
        out.accumulate(xs[0] | xs[1], norm.tconorm(*vs[0], *vs[1]));
        Ok(())
    })?;
    Ok(FusionReport {
        result: normalize_weighted(out)?,
        conflict: 0.0,
        warnings: Vec::new(),
        rule: RuleId::TConorm(norm),
        model,
    })
}

//! Neutrosophic triples `(T, I, F)`, their logic connectors and set
//! operators, N-norms and N-conorms, and the fusion rules built on them.
//!
//! Components are subunitary sets. Results that leave `[0,1]` are clamped.
//! The components of a triple need not sum to one.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{Element, Model};
use crate::mass::{Assignment, MassValue};
use crate::rules::engine::{classify, for_each_tuple};
use crate::rules::{Norm, S3Target};
use crate::subunitary::SubunitarySet;

#[derive(Clone, Debug, PartialEq)]
pub struct NeutrosophicTriple {
    pub t: SubunitarySet,
    pub i: SubunitarySet,
    pub f: SubunitarySet,
}

pub type TripleMass = Assignment<NeutrosophicTriple>;

fn one() -> SubunitarySet {
    SubunitarySet::point(1.0)
}

impl NeutrosophicTriple {
    pub fn new(t: SubunitarySet, i: SubunitarySet, f: SubunitarySet) -> Self {
        Self { t, i, f }
    }

    pub fn point(t: f64, i: f64, f: f64) -> Self {
        Self::new(SubunitarySet::point(t), SubunitarySet::point(i), SubunitarySet::point(f))
    }

    /// `(t, i, f)` when every component is a single point.
    pub fn as_points(&self) -> Option<(f64, f64, f64)> {
        Some((self.t.as_point()?, self.i.as_point()?, self.f.as_point()?))
    }

    fn zip(&self, other: &Self, op: impl Fn(&SubunitarySet, &SubunitarySet) -> SubunitarySet) -> Self {
        Self::new(op(&self.t, &other.t), op(&self.i, &other.i), op(&self.f, &other.f))
    }

    fn each(&self, op: impl Fn(&SubunitarySet) -> SubunitarySet) -> Self {
        Self::new(op(&self.t), op(&self.i), op(&self.f))
    }

    /// Componentwise `⊞` with no clamping.
    pub fn plus(&self, other: &Self) -> Self {
        self.zip(other, SubunitarySet::plus)
    }

    pub fn clamp_unit(&self) -> Self {
        self.each(SubunitarySet::clamp_unit)
    }

    /// Componentwise `{1} ⊟ x`.
    pub fn negate(&self) -> Self {
        self.each(|x| one().minus(x).clamp_unit())
    }

    /// Componentwise `x ⊡ y`.
    pub fn and(&self, other: &Self) -> Self {
        self.zip(other, |x, y| x.times(y).clamp_unit())
    }

    /// Componentwise `x ⊞ y ⊟ (x ⊡ y)`.
    pub fn or(&self, other: &Self) -> Self {
        self.zip(other, |x, y| x.plus(y).minus(&x.times(y)).clamp_unit())
    }

    pub fn complement(&self) -> Self {
        self.negate()
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.and(other)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.or(other)
    }

    /// Componentwise `x ⊟ (x ⊡ y)`.
    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |x, y| x.minus(&x.times(y)).clamp_unit())
    }

    /// Divide each component by `T + I + F`.
    pub fn normalize(&self) -> Result<Self> {
        let (t, i, f) = self.as_points().ok_or(Error::SetValuedTriple)?;
        let s = t + i + f;
        if s == 0.0 {
            return Err(Error::ZeroSum);
        }
        Ok(Self::point(t / s, i / s, f / s))
    }

    /// Render with a fixed number of decimals.
    pub fn to_string_with_precision(&self, precision: usize) -> String {
        match self.as_points() {
            Some((t, i, f)) => format!("({t:.precision$}, {i:.precision$}, {f:.precision$})"),
            None => format!(
                "({}, {}, {})",
                self.t.to_string_with_precision(precision),
                self.i.to_string_with_precision(precision),
                self.f.to_string_with_precision(precision)
            ),
        }
    }
}

impl MassValue for NeutrosophicTriple {
    fn zero() -> Self {
        Self::point(0.0, 0.0, 0.0)
    }

    fn product(&self, other: &Self) -> Self {
        self.and(other)
    }

    fn sum(&self, other: &Self) -> Self {
        self.plus(other)
    }

    fn is_null(&self) -> bool {
        self.t.is_null() && self.i.is_null() && self.f.is_null()
    }
}

/// `(t, i, f)` with each component in subunitary-set syntax.
impl fmt::Display for NeutrosophicTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.t, self.i, self.f)
    }
}

impl FromStr for NeutrosophicTriple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                column: 1,
                message: "expected `(t, i, f)`".into(),
            })?;
        // Split on commas that are not inside a bracketed component.
        let mut parts = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (k, c) in body.char_indices() {
            match c {
                '[' | '(' | '{' => depth += 1,
                ']' | ')' | '}' => depth -= 1,
                ',' if depth == 0 => {
                    parts.push(&body[start..k]);
                    start = k + 1;
                }
                _ => {}
            }
        }
        parts.push(&body[start..]);
        let [t, i, f] = parts.as_slice() else {
            return Err(Error::Parse {
                column: 1,
                message: format!("expected three components, found {}", parts.len()),
            });
        };
        Ok(Self::new(t.parse()?, i.parse()?, f.parse()?))
    }
}

/// Componentwise N-norm.
pub fn nnorm(kind: Norm, x: &NeutrosophicTriple, y: &NeutrosophicTriple) -> NeutrosophicTriple {
    match kind {
        Norm::Algebraic => x.and(y),
        Norm::Bounded => x.zip(y, |a, b| a.plus(b).minus(&one()).clamp_unit()),
        Norm::MinMax => x.zip(y, |a, b| a.pointwise_min(b)),
    }
}

/// Componentwise N-conorm.
pub fn nconorm(kind: Norm, x: &NeutrosophicTriple, y: &NeutrosophicTriple) -> NeutrosophicTriple {
    match kind {
        Norm::Algebraic => x.or(y),
        Norm::Bounded => x.zip(y, |a, b| a.plus(b).clamp_unit()),
        Norm::MinMax => x.zip(y, |a, b| a.pointwise_max(b)),
    }
}

/// The element a pair `(X, Y)` contributes to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairTarget {
    /// `X ∩ Y`, with the hybrid transfer when it is empty under the model.
    #[default]
    Intersection,
    /// `X ∪ Y`.
    Union,
}

fn check_pair(model: &Model, m1: &TripleMass, m2: &TripleMass) -> Result<()> {
    if m1.frame() != model.frame() || m2.frame() != model.frame() {
        return Err(Error::FrameMismatch);
    }
    for m in [m1, m2] {
        if m.iter().any(|(_, v)| v.as_points().is_none()) {
            return Err(Error::SetValuedTriple);
        }
    }
    Ok(())
}

fn pair_target(model: &Model, x: Element, y: Element, target: PairTarget) -> Result<Element> {
    match target {
        PairTarget::Intersection => Ok(classify(model, &[x, y], S3Target::default())?.0),
        PairTarget::Union => {
            let u = model.reduce(x | y);
            if !u.is_empty() {
                return Ok(u);
            }
            let it = model.total_ignorance()?;
            if it.is_empty() {
                Err(Error::DegenerateModel)
            } else {
                Ok(it)
            }
        }
    }
}

/// `⊞`-accumulate `op(m1(X), m2(Y))` per target, without normalization.
pub fn triple_fusion_raw(
    op: impl Fn(&NeutrosophicTriple, &NeutrosophicTriple) -> NeutrosophicTriple,
    target: PairTarget,
    model: &Model,
    m1: &TripleMass,
    m2: &TripleMass,
) -> Result<TripleMass> {
    check_pair(model, m1, m2)?;
    let mut out = TripleMass::new(model.frame());
    let sources = [m1.clone(), m2.clone()];
    for_each_tuple(&sources, |xs, vs| {
        let a = pair_target(model, xs[0], xs[1], target)?;
        out.accumulate(a, op(vs[0], vs[1]));
        Ok(())
    })?;
    Ok(out)
}

fn normalize_all(raw: TripleMass) -> Result<TripleMass> {
    let mut out = TripleMass::new(raw.frame());
    for (x, v) in raw.iter() {
        out.set(x, v.normalize()?)?;
    }
    Ok(out)
}

/// N-norm fusion: pairs go to `X ∩ Y` (transferred under the model), and each
/// output triple is normalized.
pub fn nnorm_fusion(kind: Norm, model: &Model, m1: &TripleMass, m2: &TripleMass) -> Result<TripleMass> {
    normalize_all(triple_fusion_raw(
        |x, y| nnorm(kind, x, y),
        PairTarget::Intersection,
        model,
        m1,
        m2,
    )?)
}

/// N-conorm fusion with normalized output triples.
pub fn nconorm_fusion(
    kind: Norm,
    target: PairTarget,
    model: &Model,
    m1: &TripleMass,
    m2: &TripleMass,
) -> Result<TripleMass> {
    normalize_all(triple_fusion_raw(|x, y| nconorm(kind, x, y), target, model, m1, m2)?)
}

//! Generalized basic belief assignments.
//!
//! [`Assignment`] is generic over the value type so that precise masses
//! (`f64`), imprecise masses ([`SubunitarySet`]) and neutrosophic triples share
//! one container and one combination engine.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::expr::parse_element;
use crate::lattice::{Element, Frame, Notation};
use crate::subunitary::SubunitarySet;

/// Tolerance on the total of a precise mass.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Arithmetic needed by the conjunctive engine.
pub trait MassValue: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn product(&self, other: &Self) -> Self;
    fn sum(&self, other: &Self) -> Self;
    /// True for the additive identity.
    fn is_null(&self) -> bool;
}

impl MassValue for f64 {
    fn zero() -> Self {
        0.0
    }

    fn product(&self, other: &Self) -> Self {
        self * other
    }

    fn sum(&self, other: &Self) -> Self {
        self + other
    }

    fn is_null(&self) -> bool {
        *self == 0.0
    }
}

impl MassValue for SubunitarySet {
    fn zero() -> Self {
        SubunitarySet::point(0.0)
    }

    fn product(&self, other: &Self) -> Self {
        self.times(other)
    }

    fn sum(&self, other: &Self) -> Self {
        self.plus(other)
    }

    fn is_null(&self) -> bool {
        self.as_point() == Some(0.0)
    }
}

/// A sparse map from elements of `D^Θ` to mass values.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment<V> {
    frame: Frame,
    masses: BTreeMap<Element, V>,
    allows_empty_focal: bool,
}

pub type PreciseMass = Assignment<f64>;
pub type ImpreciseMass = Assignment<SubunitarySet>;

impl<V: MassValue> Assignment<V> {
    pub fn new(frame: &Frame) -> Self {
        Self {
            frame: frame.clone(),
            masses: BTreeMap::new(),
            allows_empty_focal: false,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Whether `∅` may carry mass (only for outputs of Smets' rule).
    pub fn allows_empty_focal(&self) -> bool {
        self.allows_empty_focal
    }

    pub fn with_empty_focal(mut self, allowed: bool) -> Self {
        self.allows_empty_focal = allowed;
        self
    }

    /// Set the value of `x`, replacing any previous value.
    pub fn set(&mut self, x: Element, value: V) -> Result<()> {
        self.frame.check(x)?;
        self.masses.insert(x, value);
        Ok(())
    }

    /// Accumulate `value` onto `x`.
    pub fn add(&mut self, x: Element, value: V) -> Result<()> {
        self.frame.check(x)?;
        self.accumulate(x, value);
        Ok(())
    }

    pub(crate) fn accumulate(&mut self, x: Element, value: V) {
        match self.masses.get_mut(&x) {
            Some(v) => *v = v.sum(&value),
            None => {
                self.masses.insert(x, value);
            }
        }
    }

    /// Builder form of [`Assignment::set`] taking an expression.
    pub fn with(mut self, expr: &str, value: V) -> Result<Self> {
        let x = parse_element(&self.frame, expr)?;
        self.set(x, value)?;
        Ok(self)
    }

    pub fn get(&self, x: Element) -> Option<&V> {
        self.masses.get(&x)
    }

    /// Entries in enumeration order, including explicit nulls.
    pub fn iter(&self) -> impl Iterator<Item = (Element, &V)> {
        self.masses.iter().map(|(k, v)| (*k, v))
    }

    /// Entries with non-null value.
    pub fn focal(&self) -> impl Iterator<Item = (Element, &V)> {
        self.iter().filter(|(_, v)| !v.is_null())
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    /// Apply `f` to every value.
    pub fn map<W: MassValue>(&self, f: impl Fn(&V) -> W) -> Assignment<W> {
        Assignment {
            frame: self.frame.clone(),
            masses: self.masses.iter().map(|(k, v)| (*k, f(v))).collect(),
            allows_empty_focal: self.allows_empty_focal,
        }
    }

    /// Render entries as `(expression, value)` pairs.
    pub fn render_entries(&self, notation: Notation) -> Vec<(String, &V)> {
        self.iter()
            .map(|(x, v)| (self.frame.render(x, notation), v))
            .collect()
    }
}

impl PreciseMass {
    /// Build from `(expression, mass)` pairs.
    pub fn from_exprs(frame: &Frame, entries: &[(&str, f64)]) -> Result<Self> {
        let mut m = Self::new(frame);
        for &(expr, v) in entries {
            let x = parse_element(frame, expr)?;
            m.add(x, v)?;
        }
        Ok(m)
    }

    /// All mass on the total ignorance.
    pub fn vacuous(frame: &Frame) -> Result<Self> {
        let mut m = Self::new(frame);
        m.set(frame.total_ignorance()?, 1.0)?;
        Ok(m)
    }

    /// `m(x)`, zero when absent.
    pub fn mass(&self, x: Element) -> f64 {
        self.get(x).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.masses.values().sum()
    }

    /// Check the range of every value, the total and the mass of `∅`.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        for (x, &v) in &self.masses {
            let name = self.frame.render(*x, Notation::Unicode);
            if !(-SUM_TOLERANCE..=1.0 + SUM_TOLERANCE).contains(&v) {
                problems.push(format!("m({name}) = {v} is outside [0,1]"));
            }
            if x.is_empty() && v != 0.0 && !self.allows_empty_focal {
                problems.push(format!("m(∅) = {v} but the empty set cannot be focal"));
            }
        }
        let total = self.total();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            let kind = if total < 1.0 { "deficit" } else { "excess" };
            problems.push(format!("masses sum to {total}, {kind} {}", (total - 1.0).abs()));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidMass(problems.join("; ")))
        }
    }

    /// Divide every value by the total.
    pub fn normalize(&self) -> Result<Self> {
        let total = self.total();
        if total == 0.0 {
            return Err(Error::ZeroTotalMass);
        }
        Ok(self.map(|v| v / total))
    }

    /// Each mass as a one-point set.
    pub fn lift(&self) -> ImpreciseMass {
        self.map(|&v| SubunitarySet::point(v))
    }
}

impl ImpreciseMass {
    pub fn from_exprs(frame: &Frame, entries: &[(&str, &str)]) -> Result<Self> {
        let mut m = Self::new(frame);
        for &(expr, set) in entries {
            let x = parse_element(frame, expr)?;
            let s: SubunitarySet = set.parse()?;
            if s.is_empty() {
                return Err(Error::EmptyOperand);
            }
            m.set(x, s)?;
        }
        Ok(m)
    }

    /// `⊞` of all focal sets.
    pub fn sum_set(&self) -> SubunitarySet {
        self.masses
            .values()
            .fold(SubunitarySet::point(0.0), |acc, s| acc.plus(s))
    }

    /// Whether some selection of one point per focal set sums to 1.
    pub fn is_admissible(&self) -> bool {
        !self.masses.is_empty() && self.sum_set().contains_within(1.0, SUM_TOLERANCE)
    }

    /// A selection summing to 1, when one exists.
    ///
    /// Elements are visited in enumeration order. Each one takes the largest
    /// value that still lets the remaining elements complete the sum to 1;
    /// the last one takes the remainder.
    pub fn witness(&self) -> Option<PreciseMass> {
        if !self.is_admissible() {
            return None;
        }
        let sets: Vec<(Element, &SubunitarySet)> = self.iter().collect();
        // suffix[i] = ⊞ of sets[i..]
        let mut suffix = vec![SubunitarySet::point(0.0); sets.len() + 1];
        for i in (0..sets.len()).rev() {
            suffix[i] = suffix[i + 1].plus(sets[i].1);
        }
        let mut out = PreciseMass::new(&self.frame);
        let mut remaining = 1.0;
        for (i, &(x, set)) in sets.iter().enumerate() {
            let value = if i + 1 == sets.len() {
                remaining
            } else {
                let reachable = SubunitarySet::point(remaining).minus(&suffix[i + 1]);
                let mut feasible = set.intersect(&reachable);
                if feasible.is_empty() {
                    // Admissible only within tolerance: widen the target.
                    let widened = SubunitarySet::from_pieces(reachable.pieces().iter().map(|p| {
                        crate::subunitary::Piece {
                            lo: p.lo - SUM_TOLERANCE,
                            hi: p.hi + SUM_TOLERANCE,
                            lo_closed: true,
                            hi_closed: true,
                        }
                    }));
                    feasible = set.intersect(&widened);
                }
                representative(&feasible)?
            };
            out.masses.insert(x, value);
            remaining -= value;
        }
        Some(out)
    }

    /// Pick one point per focal element.
    pub fn to_precise(&self, selection: &[(Element, f64)]) -> Result<PreciseMass> {
        let mut out = PreciseMass::new(&self.frame);
        for (x, set) in self.iter() {
            let &(_, v) = selection
                .iter()
                .find(|(y, _)| *y == x)
                .ok_or(Error::MissingSelection)?;
            if !set.contains(v) {
                return Err(Error::SelectionOutsideSet { value: v });
            }
            out.masses.insert(x, v);
        }
        Ok(out)
    }
}

/// The largest attained point of the top piece, or its midpoint when the
/// upper end is open.
fn representative(s: &SubunitarySet) -> Option<f64> {
    let p = s.pieces().last()?;
    Some(if p.hi_closed { p.hi } else { (p.lo + p.hi) / 2.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn frame(n: usize) -> Frame {
        Frame::with_size(n).unwrap()
    }

    fn table1() -> (ImpreciseMass, ImpreciseMass) {
        let f = frame(2);
        let m1 = ImpreciseMass::from_exprs(&f, &[("th1", "[0.1,0.2]u{0.3}"), ("th2", "(0.4,0.6)u[0.7,0.8]")]).unwrap();
        let m2 = ImpreciseMass::from_exprs(&f, &[("th1", "[0.4,0.5]"), ("th2", "[0,0.4]u{0.5,0.6}")]).unwrap();
        (m1, m2)
    }

    #[test]
    fn validation() {
        let f = frame(4);
        let ok = PreciseMass::from_exprs(&f, &[("th1", 0.6), ("th3", 0.4)]).unwrap();
        assert!(ok.validate().is_ok());
        let short = PreciseMass::from_exprs(&f, &[("th1", 0.3), ("th2", 0.3)]).unwrap();
        assert!((1.0 - short.total() - 0.4).abs() < 1e-12);
        match short.validate() {
            Err(Error::InvalidMass(msg)) => assert!(msg.contains("deficit"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let neg = PreciseMass::from_exprs(&f, &[("th1", 1.2), ("th2", -0.2)]).unwrap();
        assert!(neg.validate().is_err());
        let empty = PreciseMass::from_exprs(&f, &[("0", 0.5), ("th2", 0.5)]).unwrap();
        assert!(empty.validate().is_err());
        assert!(empty.clone().with_empty_focal(true).validate().is_ok());
    }

    #[test]
    fn normalization() {
        let f = frame(2);
        let m = PreciseMass::from_exprs(&f, &[("th1", 0.2), ("th2", 0.6)]).unwrap();
        let n = m.normalize().unwrap();
        let th1 = f.atom(1).unwrap();
        let th2 = f.atom(2).unwrap();
        assert!((n.mass(th1) - 0.25).abs() < 1e-12);
        assert!((n.mass(th2) - 0.75).abs() < 1e-12);
        assert_eq!(PreciseMass::new(&f).normalize(), Err(Error::ZeroTotalMass));
    }

    #[test]
    fn table1_witnesses() {
        let (m1, m2) = table1();
        let f = frame(2);
        let (th1, th2) = (f.atom(1).unwrap(), f.atom(2).unwrap());
        assert!(m1.is_admissible() && m2.is_admissible());
        let w1 = m1.witness().unwrap();
        assert!((w1.mass(th1) - 0.3).abs() < 1e-12 && (w1.mass(th2) - 0.7).abs() < 1e-12);
        assert!(w1.validate().is_ok());
        let w2 = m2.witness().unwrap();
        assert!(w2.validate().is_ok());
        assert!(m2.to_precise(&[(th1, w2.mass(th1)), (th2, w2.mass(th2))]).is_ok());
        // The selection 0.4 + 0.6 is also a witness for the second source.
        let p = m2.to_precise(&[(th1, 0.4), (th2, 0.6)]).unwrap();
        assert!(p.validate().is_ok());
    }

    #[test]
    fn inadmissible_and_selection_errors() {
        let f = frame(1);
        let m = ImpreciseMass::from_exprs(&f, &[("th1", "{0.5}")]).unwrap();
        assert!(!m.is_admissible());
        assert!(m.witness().is_none());
        let (m1, _) = table1();
        let f = frame(2);
        let (th1, th2) = (f.atom(1).unwrap(), f.atom(2).unwrap());
        let p = m1.to_precise(&[(th1, 0.1), (th2, 0.5)]).unwrap();
        assert!((p.total() - 0.6).abs() < 1e-12);
        assert!(p.validate().is_err());
        assert_eq!(
            m1.to_precise(&[(th1, 0.25), (th2, 0.5)]),
            Err(Error::SelectionOutsideSet { value: 0.25 })
        );
        assert_eq!(m1.to_precise(&[(th1, 0.1)]), Err(Error::MissingSelection));
    }

    fn precise_mass() -> impl Strategy<Value = PreciseMass> {
        let f = frame(3);
        let elems = crate::lattice::enumerate_hyper_power_set(&f).unwrap();
        prop::collection::vec((1..elems.len(), 0.01..1.0f64), 1..5).prop_map(move |raw| {
            let total: f64 = raw.iter().map(|r| r.1).sum();
            let mut m = PreciseMass::new(&f);
            for (i, w) in raw {
                m.add(elems[i], w / total).unwrap();
            }
            m
        })
    }

    proptest! {
        #[test]
        fn lift_round_trips(m in precise_mass()) {
            let lifted = m.lift();
            let selection: Vec<(Element, f64)> = m.iter().map(|(x, &v)| (x, v)).collect();
            prop_assert_eq!(lifted.to_precise(&selection).unwrap(), m.clone());
            prop_assert!(lifted.is_admissible());
            let w = lifted.witness().unwrap();
            prop_assert!(w.validate().is_ok());
        }
    }
}

//! Belief, plausibility and pignistic probabilities, and decisions by argmax.
//!
//! Containment and overlap are judged after reduction under the model.

use crate::error::{Error, Result};
use crate::lattice::{Element, Model, DEFAULT_ENUMERATION_LIMIT};
use crate::mass::PreciseMass;

/// Probabilities closer than this are treated as tied.
const TIE_EPS: f64 = 1e-12;

fn check(model: &Model, m: &PreciseMass) -> Result<()> {
    if m.frame() != model.frame() {
        return Err(Error::FrameMismatch);
    }
    Ok(())
}

/// `Bel(A) = Σ m(B)` over nonempty `B ⊆ A`.
pub fn bel(model: &Model, m: &PreciseMass, a: Element) -> Result<f64> {
    check(model, m)?;
    let a = model.reduce(a);
    Ok(m.iter()
        .filter(|&(b, _)| {
            let b = model.reduce(b);
            !b.is_empty() && b.is_subset_of(a)
        })
        .map(|(_, &v)| v)
        .sum())
}

/// `Pl(A) = Σ m(B)` over `B` with `B ∩ A` nonempty.
pub fn pl(model: &Model, m: &PreciseMass, a: Element) -> Result<f64> {
    check(model, m)?;
    let a = model.reduce(a);
    Ok(m.iter()
        .filter(|&(b, _)| model.reduce(b).intersects(a))
        .map(|(_, &v)| v)
        .sum())
}

/// `Σ C(X)/C(A) · m(X)` over nonempty `X ⊆ A`.
pub fn bel_improved(model: &Model, m: &PreciseMass, a: Element) -> Result<f64> {
    check(model, m)?;
    let a = model.reduce(a);
    if a.is_empty() {
        return Err(Error::EmptyArgument);
    }
    let ca = f64::from(a.part_count());
    Ok(m.iter()
        .filter_map(|(x, &v)| {
            let x = model.reduce(x);
            (!x.is_empty() && x.is_subset_of(a)).then(|| f64::from(x.part_count()) / ca * v)
        })
        .sum())
}

/// `Σ C(X∩A)/C(X∪A) · m(X)` over `X` meeting `A`.
pub fn pl_improved(model: &Model, m: &PreciseMass, a: Element) -> Result<f64> {
    check(model, m)?;
    let a = model.reduce(a);
    if a.is_empty() {
        return Err(Error::EmptyArgument);
    }
    Ok(m.iter()
        .filter_map(|(x, &v)| {
            let x = model.reduce(x);
            x.intersects(a)
                .then(|| f64::from((x & a).part_count()) / f64::from((x | a).part_count()) * v)
        })
        .sum())
}

/// A pignistic probability on the reduced hyper-power set, evaluated on demand.
#[derive(Clone, Debug, PartialEq)]
pub struct PignisticDistribution {
    model: Model,
    /// Reduced focal elements with `C(X)` and `m(X)`; `C(X) > 0`.
    terms: Vec<(Element, u32, f64)>,
    /// `P{∅}`: `m(∅)` for the classical transformation, otherwise 0.
    empty: f64,
}

impl PignisticDistribution {
    pub fn model(&self) -> &Model {
        &self.model
    }

    /// `P{A} = Σ C(X∩A)/C(X) · m(X)`.
    pub fn prob(&self, a: Element) -> f64 {
        let a = self.model.reduce(a);
        if a.is_empty() {
            return self.empty;
        }
        self.terms
            .iter()
            .map(|&(x, cx, v)| f64::from((x & a).part_count()) / f64::from(cx) * v)
            .sum()
    }

    /// `P` on every element of the reduced lattice, in enumeration order.
    pub fn table(&self) -> Result<Vec<(Element, f64)>> {
        Ok(self
            .model
            .reduced_lattice(DEFAULT_ENUMERATION_LIMIT)?
            .into_iter()
            .map(|x| (x, self.prob(x)))
            .collect())
    }

    /// Probabilities of the hypotheses `θ1 … θn`.
    pub fn singletons(&self) -> Vec<(Element, f64)> {
        self.model
            .frame()
            .atoms()
            .into_iter()
            .map(|x| (x, self.prob(x)))
            .collect()
    }
}

fn pignistic(model: &Model, m: &PreciseMass) -> PignisticDistribution {
    let terms = m
        .iter()
        .filter_map(|(x, &v)| {
            let x = model.reduce(x);
            let c = x.part_count();
            (c > 0 && v != 0.0).then_some((x, c, v))
        })
        .collect();
    PignisticDistribution {
        model: model.clone(),
        terms,
        empty: 0.0,
    }
}

/// Generalized pignistic transformation using DSm cardinalities. Focal
/// elements that are empty under the model are skipped.
pub fn gpt(model: &Model, m: &PreciseMass) -> Result<PignisticDistribution> {
    check(model, m)?;
    Ok(pignistic(model, m))
}

/// Classical pignistic transformation. `P{∅}` is `m(∅)` by the convention
/// `|∅|/|∅| = 1`.
pub fn cpt(model: &Model, m: &PreciseMass) -> Result<PignisticDistribution> {
    check(model, m)?;
    if !model.is_shafer_compatible() {
        return Err(Error::ModelNotShafer);
    }
    let mut p = pignistic(model, m);
    p.empty = m
        .iter()
        .filter(|&(x, _)| model.is_empty_element(x))
        .map(|(_, &v)| v)
        .sum();
    Ok(p)
}

/// The outcome of an argmax decision.
#[derive(Clone, Debug, PartialEq)]
pub struct Decision {
    pub choice: Element,
    pub probability: f64,
    /// Other candidates within tolerance of the maximum, in enumeration order.
    pub tied_with: Vec<Element>,
}

impl Decision {
    pub fn is_tie(&self) -> bool {
        !self.tied_with.is_empty()
    }
}

/// Argmax over scored candidates; ties go to the first in enumeration order.
pub fn argmax(scores: &[(Element, f64)]) -> Result<Decision> {
    let best = scores
        .iter()
        .map(|s| s.1)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut tied: Vec<Element> = scores
        .iter()
        .filter(|s| best - s.1 <= TIE_EPS)
        .map(|s| s.0)
        .collect();
    if tied.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    tied.sort_unstable();
    tied.dedup();
    let choice = tied.remove(0);
    let probability = scores.iter().find(|s| s.0 == choice).map_or(best, |s| s.1);
    Ok(Decision {
        choice,
        probability,
        tied_with: tied,
    })
}

/// Pick the candidate with the largest pignistic probability.
pub fn decide(p: &PignisticDistribution, candidates: &[Element]) -> Result<Decision> {
    let scores: Vec<(Element, f64)> = candidates.iter().map(|&x| (x, p.prob(x))).collect();
    argmax(&scores)
}

/// [`decide`] over the hypotheses `θ1 … θn`.
pub fn decide_singletons(p: &PignisticDistribution) -> Result<Decision> {
    argmax(&p.singletons())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{enumerate_hyper_power_set, Constraint, Frame};
    use crate::parse_element;
    use crate::rules::{dempster, dsm_classic, dsm_hybrid, smets};
    use proptest::prelude::*;

    fn el(f: &Frame, s: &str) -> Element {
        parse_element(f, s).unwrap()
    }

    fn comparison() -> (Frame, Vec<PreciseMass>, Model) {
        let f = Frame::with_size(3).unwrap();
        let m1 = PreciseMass::from_exprs(&f, &[("th1", 0.1), ("th2", 0.4), ("th3", 0.2), ("th1|th2", 0.3)]).unwrap();
        let m2 = PreciseMass::from_exprs(&f, &[("th1", 0.5), ("th2", 0.1), ("th3", 0.3), ("th1|th2", 0.1)]).unwrap();
        let model = Model::shafer(&f).forcing_empty(el(&f, "th3")).unwrap();
        (f, vec![m1, m2], model)
    }

    /// The hybrid model keeping only θ1∩θ2.
    fn hybrid_model(f: &Frame) -> Model {
        Model::hybrid(
            f,
            [
                Constraint::forcing_empty(el(f, "th1&th3")),
                Constraint::forcing_empty(el(f, "th2&th3")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn bel_by_containment_scan() {
        let (f, s, _) = comparison();
        let free = Model::free(&f);
        let m = dsm_classic(&s).unwrap().result;
        let a = el(&f, "th1");
        let mut oracle = 0.0;
        for x in enumerate_hyper_power_set(&f).unwrap() {
            // x ⊆ θ1 iff x ∩ θ1 = x
            if !x.is_empty() && (x & a) == x {
                oracle += m.mass(x);
            }
        }
        assert!((bel(&free, &m, a).unwrap() - oracle).abs() < 1e-12);
        assert!((oracle - (0.21 + 0.21 + 0.13)).abs() < 1e-12);
        assert!((pl(&free, &m, a).unwrap() - 1.0).abs() < 1e-12);
        assert!((bel(&free, &m, f.total_ignorance().unwrap()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn improved_bel_pl() {
        let f = Frame::with_size(3).unwrap();
        let model = hybrid_model(&f);
        let a = el(&f, "th1");
        let on_a = PreciseMass::from_exprs(&f, &[("th1", 1.0)]).unwrap();
        assert_eq!(bel_improved(&model, &on_a, a), Ok(1.0));
        let sub = PreciseMass::from_exprs(&f, &[("th1&th2", 1.0)]).unwrap();
        assert_eq!(bel_improved(&model, &sub, a), Ok(0.5));
        let disjoint = PreciseMass::from_exprs(&f, &[("th3", 1.0)]).unwrap();
        assert_eq!(pl_improved(&model, &disjoint, a), Ok(0.0));
        assert_eq!(bel_improved(&model, &on_a, f.empty()), Err(Error::EmptyArgument));
    }

    #[test]
    fn gpt_hybrid_vacuous() {
        let f = Frame::with_size(3).unwrap();
        let model = hybrid_model(&f);
        let p = gpt(&model, &PreciseMass::vacuous(&f).unwrap()).unwrap();
        for (x, want) in [("th3", 0.25), ("th1", 0.5), ("th1&th2", 0.25), ("th1|th2", 0.75)] {
            assert!((p.prob(el(&f, x)) - want).abs() < 1e-12, "{x}");
        }
        assert!((p.prob(el(&f, "th1")) + p.prob(el(&f, "th2")) - p.prob(el(&f, "th1&th2")) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn gpt_on_zadeh_hybrid_output() {
        let f = Frame::with_size(3).unwrap();
        let shafer = Model::shafer(&f);
        let m1 = PreciseMass::from_exprs(&f, &[("th1", 0.5), ("th3", 0.5)]).unwrap();
        let m2 = PreciseMass::from_exprs(&f, &[("th2", 0.5), ("th3", 0.5)]).unwrap();
        let m = dsm_hybrid(&shafer, &[m1, m2]).unwrap().result;
        let p = gpt(&shafer, &m).unwrap();
        // Full expansion: each singleton θi gets m(θi) plus half of every
        // two-element union containing it.
        let want = [
            ("th1", 0.25 / 2.0 + 0.25 / 2.0),
            ("th2", 0.25 / 2.0 + 0.25 / 2.0),
            ("th3", 0.25 + 0.25 / 2.0 + 0.25 / 2.0),
        ];
        for (x, v) in want {
            assert!((p.prob(el(&f, x)) - v).abs() < 1e-12, "{x}");
        }
        for (x, v) in p.table().unwrap() {
            let mut oracle = 0.0;
            for (y, &w) in m.iter() {
                let cy = shafer.cardinality(y);
                if cy > 0 {
                    oracle += f64::from(shafer.cardinality(x & y)) / f64::from(cy) * w;
                }
            }
            assert!((v - oracle).abs() < 1e-12);
        }
    }

    #[test]
    fn cpt_examples() {
        let f = Frame::with_size(2).unwrap();
        let shafer = Model::shafer(&f);
        let m = PreciseMass::from_exprs(&f, &[("th1", 0.4), ("th1|th2", 0.6)]).unwrap();
        let p = cpt(&shafer, &m).unwrap();
        assert!((p.prob(el(&f, "th1")) - 0.7).abs() < 1e-12);
        assert!((p.prob(el(&f, "th2")) - 0.3).abs() < 1e-12);
        let d = decide_singletons(&p).unwrap();
        assert_eq!(d.choice, el(&f, "th1"));
        assert!(!d.is_tie());

        let v = cpt(&shafer, &PreciseMass::vacuous(&f).unwrap()).unwrap();
        assert_eq!(v.prob(el(&f, "th1")), 0.5);
        let d = decide_singletons(&v).unwrap();
        assert_eq!(d.choice, el(&f, "th1"));
        assert_eq!(d.tied_with, vec![el(&f, "th2")]);

        assert_eq!(cpt(&Model::free(&f), &m), Err(Error::ModelNotShafer));
        assert_eq!(decide(&v, &[]), Err(Error::EmptyCandidates));
    }

    #[test]
    fn cpt_of_smets_output_keeps_empty_mass() {
        let (f, s, model) = comparison();
        let m = smets(&model, &s).unwrap().result;
        let p = cpt(&model, &m).unwrap();
        assert!((p.prob(f.empty()) - 0.65).abs() < 1e-12);
    }

    #[test]
    fn dempster_comparison_decides_th1() {
        let (f, s, model) = comparison();
        let m = dempster(&model, &s).unwrap().result;
        let p = cpt(&model, &m).unwrap();
        let d = decide_singletons(&p).unwrap();
        assert_eq!(d.choice, el(&f, "th1"));
        assert!((d.probability - (0.6 + 0.085714 / 2.0)).abs() < 1e-6);
    }

    fn random_mass() -> impl Strategy<Value = PreciseMass> {
        let f = Frame::with_size(3).unwrap();
        let all = enumerate_hyper_power_set(&f).unwrap();
        prop::collection::vec((1..all.len(), 0.05..1.0f64), 1..5).prop_map(move |raw| {
            let total: f64 = raw.iter().map(|r| r.1).sum();
            let mut m = PreciseMass::new(&f);
            for (i, w) in raw {
                m.add(all[i], w / total).unwrap();
            }
            m
        })
    }

    proptest! {
        #[test]
        fn pignistic_between_bel_and_pl(m in random_mass()) {
            let f = m.frame().clone();
            for model in [Model::free(&f), hybrid_model(&f), Model::shafer(&f)] {
                // Mass on model-empty elements would be transferred by a rule first.
                let mut reduced = PreciseMass::new(&f);
                for (x, &v) in m.iter() {
                    let r = model.reduce(x);
                    reduced.add(if r.is_empty() { model.total_ignorance().unwrap() } else { r }, v).unwrap();
                }
                let p = gpt(&model, &reduced).unwrap();
                let table = p.table().unwrap();
                for &(a, pa) in &table {
                    let b = bel(&model, &reduced, a).unwrap();
                    let q = pl(&model, &reduced, a).unwrap();
                    prop_assert!(b <= pa + 1e-9 && pa <= q + 1e-9);
                    prop_assert!(bel_improved(&model, &reduced, a).map_or(true, |d| d <= b + 1e-12));
                    prop_assert!(pl_improved(&model, &reduced, a).map_or(true, |d| d <= q + 1e-12));
                }
                prop_assert!((p.prob(f.total_ignorance().unwrap()) - 1.0).abs() < 1e-9);
                prop_assert_eq!(p.prob(f.empty()), 0.0);
                for &(a, pa) in &table {
                    for &(b, pb) in &table {
                        if (a & b).is_empty() {
                            prop_assert!((p.prob(a | b) - pa - pb).abs() < 1e-9);
                        }
                    }
                }
            }
        }

        #[test]
        fn gpt_equals_cpt_under_shafer(m in random_mass()) {
            let f = m.frame().clone();
            let shafer = Model::shafer(&f);
            let g = gpt(&shafer, &m).unwrap();
            let c = cpt(&shafer, &m).unwrap();
            for (a, pa) in g.table().unwrap() {
                if !a.is_empty() {
                    prop_assert_eq!(pa, c.prob(a));
                }
            }
        }

        #[test]
        fn argmax_ignores_positive_rescaling(
            values in prop::collection::vec(0.0..1.0f64, 1..6),
            k in 0.1..10.0f64,
        ) {
            let f = Frame::with_size(5).unwrap();
            let scores: Vec<(Element, f64)> = values.iter().enumerate()
                .map(|(i, &v)| (f.atom(i + 1).unwrap(), v)).collect();
            let total: f64 = values.iter().map(|v| v * k).sum::<f64>().max(f64::MIN_POSITIVE);
            let scaled: Vec<(Element, f64)> = scores.iter().map(|&(x, v)| (x, v * k / total)).collect();
            let a = argmax(&scores).unwrap();
            let b = argmax(&scaled).unwrap();
            if !a.is_tie() && !b.is_tie() {
                prop_assert_eq!(a.choice, b.choice);
            }
        }
    }
}

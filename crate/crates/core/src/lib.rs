//! DSmT: plausible and paradoxical reasoning over hyper-power sets.
//!
//! Masses live on the hyper-power set [`Element`]s of a [`Frame`], and a
//! [`Model`] decides which intersections are empty.

pub mod error;
pub mod expr;
pub mod lattice;
pub mod mass;
pub mod rules;
pub mod decision;
pub mod neutro;
pub mod subunitary;

pub use error::{Error, Result};
pub use expr::{parse_constraint, parse_element};
pub use lattice::{
    component_union, enumerate_hyper_power_set, enumerate_hyper_power_set_with_limit, CanonicalForm,
    Constraint, Element, Frame, Model, ModelKind, Notation, DEFAULT_ENUMERATION_LIMIT, MAX_FRAME,
};
pub use subunitary::SubunitarySet;
pub use mass::{Assignment, ImpreciseMass, MassValue, PreciseMass};
pub use rules::{fuse, FusionReport, Norm, RuleId, S3Target, Warning};
pub use decision::{argmax, bel, bel_improved, cpt, decide, decide_singletons, gpt, pl, pl_improved, Decision, PignisticDistribution};
pub use neutro::{nconorm, nconorm_fusion, nnorm, nnorm_fusion, NeutrosophicTriple, PairTarget, TripleMass};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/masses.md")]
    mod masses {}
    #[doc = include_str!("../../../book/src/rules.md")]
    mod rules {}
    #[doc = include_str!("../../../book/src/decision.md")]
    mod decision {}
    #[doc = include_str!("../../../book/src/neutrosophic.md")]
    mod neutrosophic {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

//! Decision axioms over finite domains.
//!
//! A decision is a triple `(x, f, y)` of a profile, a rule and the outcome
//! `f(x)`. An axiom is a total 0/1 evaluator on decisions. This crate
//! classifies axioms by the shape of the partition they induce, reduces them
//! to profile-outcome lists, and decides impasses, impossibility, forcing,
//! implied rules and the paradox of deciding with an implied rule that
//! violates its own axiom. A voting instantiation and transparency/deception
//! checks sit on top.

pub mod axiom;
pub mod bitset;
pub mod calculus;
pub mod census;
pub mod deception;
pub mod domain;
pub mod error;
pub mod files;
pub mod fixtures;
pub mod taxonomy;
pub mod voting;

pub use axiom::{Axiom, AxiomForm, DecisionList, InfoRequirements};
pub use bitset::BitSet;
pub use domain::{
    numbered_domain, Decision, DecisionDomain, Element, LabelSpace, OutcomeId, ProfileId, RuleTable, RuleUniverse,
    DEFAULT_CAP,
};
pub use error::{Cardinality, Error, Result};
pub use taxonomy::{classify, classify_with_pool, AxiomClass, ClassSet};

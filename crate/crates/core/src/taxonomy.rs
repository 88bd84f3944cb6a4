//! Classification of axioms by the structure of the partition they induce.
//!
//! A class holds iff the axiom is constant on every fiber of the matching
//! projection of the decision space: `x` (structural), `f` (procedural),
//! `y` (consequentialist), `(x, y)` (blackbox) and `(f, y)` (caudal). An axiom
//! in none of these classes, and not trivial, is exigent.
//!
//! When several classes hold, the most specific label follows the fixed
//! priority: trivial, then structural/procedural/consequentialist, then
//! blackbox/caudal, then exigent. The priority is a reporting convention; all holding classes are
//! always reported.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::axiom::Axiom;
use crate::bitset::BitSet;
use crate::domain::{Decision, DecisionDomain, ProfileId, RuleTable};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomClass {
    PositivelyTrivial,
    NegativelyTrivial,
    Structural,
    Procedural,
    Consequentialist,
    Blackbox,
    Caudal,
    Exigent,
}

impl AxiomClass {
    pub const ALL: [AxiomClass; 8] = [
        AxiomClass::PositivelyTrivial,
        AxiomClass::NegativelyTrivial,
        AxiomClass::Structural,
        AxiomClass::Procedural,
        AxiomClass::Consequentialist,
        AxiomClass::Blackbox,
        AxiomClass::Caudal,
        AxiomClass::Exigent,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomClass::PositivelyTrivial => "positively-trivial",
            AxiomClass::NegativelyTrivial => "negatively-trivial",
            AxiomClass::Structural => "structural",
            AxiomClass::Procedural => "procedural",
            AxiomClass::Consequentialist => "consequentialist",
            AxiomClass::Blackbox => "blackbox",
            AxiomClass::Caudal => "caudal",
            AxiomClass::Exigent => "exigent",
        }
    }

    pub fn projection(self) -> Option<Projection> {
        match self {
            AxiomClass::Structural => Some(Projection::Profile),
            AxiomClass::Procedural => Some(Projection::Rule),
            AxiomClass::Consequentialist => Some(Projection::Outcome),
            AxiomClass::Blackbox => Some(Projection::ProfileOutcome),
            AxiomClass::Caudal => Some(Projection::RuleOutcome),
            _ => None,
        }
    }
}

/// A projection of decisions onto some of their components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Projection {
    Profile,
    Rule,
    Outcome,
    ProfileOutcome,
    RuleOutcome,
    ProfileRule,
}

impl Projection {
    /// (profile, rule, outcome) components kept by the projection.
    pub fn components(self) -> (bool, bool, bool) {
        match self {
            Projection::Profile => (true, false, false),
            Projection::Rule => (false, true, false),
            Projection::Outcome => (false, false, true),
            Projection::ProfileOutcome => (true, false, true),
            Projection::RuleOutcome => (false, true, true),
            Projection::ProfileRule => (true, true, false),
        }
    }
}

/// Evidence that a class does not hold.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// A violating decision (refutes positive triviality).
    Violates(Decision),
    /// An obeying decision (refutes negative triviality).
    Obeys(Decision),
    /// Two decisions in the same fiber that evaluate differently.
    Split { obeying: Decision, violating: Decision },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Triviality {
    Positively,
    Negatively,
    NonTrivial,
}

/// Exigent sub-kind, only ever taken from declared requirements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExigentKind {
    Reducible,
    Irreducible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassificationMethod {
    /// Fiber tests over the whole decision space.
    Exhaustive,
    /// Declared requirements for holding classes, witnesses for the rest.
    DeclaredAndWitnessed,
}

#[derive(Clone, Debug)]
pub struct ClassSet {
    holds: BTreeSet<AxiomClass>,
    witnesses: BTreeMap<AxiomClass, Witness>,
    exigent_kind: Option<ExigentKind>,
    method: ClassificationMethod,
}

impl ClassSet {
    pub fn holds(&self, class: AxiomClass) -> bool {
        self.holds.contains(&class)
    }

    pub fn classes(&self) -> impl Iterator<Item = AxiomClass> + '_ {
        self.holds.iter().copied()
    }

    pub fn most_specific(&self) -> AxiomClass {
        *self.holds.first().expect("a classification always holds at least one class")
    }

    pub fn witness(&self, class: AxiomClass) -> Option<&Witness> {
        self.witnesses.get(&class)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = (AxiomClass, &Witness)> {
        self.witnesses.iter().map(|(c, w)| (*c, w))
    }

    pub fn exigent_kind(&self) -> Option<ExigentKind> {
        self.exigent_kind
    }

    pub fn method(&self) -> ClassificationMethod {
        self.method
    }

    pub fn is_trivial(&self) -> bool {
        self.holds(AxiomClass::PositivelyTrivial) || self.holds(AxiomClass::NegativelyTrivial)
    }

    fn finish(
        mut holds: BTreeSet<AxiomClass>,
        witnesses: BTreeMap<AxiomClass, Witness>,
        axiom: &Axiom,
        method: ClassificationMethod,
    ) -> ClassSet {
        let mut exigent_kind = None;
        if holds.is_empty() {
            holds.insert(AxiomClass::Exigent);
            exigent_kind = axiom.requirements().map(|r| {
                if r.needs_outcome_computed {
                    ExigentKind::Irreducible
                } else {
                    ExigentKind::Reducible
                }
            });
        }
        ClassSet { holds, witnesses, exigent_kind, method }
    }
}

/// Component indices of every decision of an enumerable domain, in decision order.
type FiberKey = (Option<ProfileId>, Option<usize>, Option<usize>);

#[derive(Clone, Debug)]
pub struct DecisionIndex {
    profiles: usize,
    outcomes: usize,
    rules: usize,
    outcome_of: Vec<u32>,
}

impl DecisionIndex {
    pub fn new(domain: &DecisionDomain, cap: u64) -> Result<Self> {
        let n = domain.decisions_within(cap)?;
        let mut outcome_of = Vec::with_capacity(n);
        for rule in domain.enumerate_rules(cap)? {
            outcome_of.extend(rule.outcomes().iter().map(|y| y.0 as u32));
        }
        Ok(DecisionIndex {
            profiles: domain.profile_count(),
            outcomes: domain.outcome_count(),
            rules: n / domain.profile_count(),
            outcome_of,
        })
    }

    pub fn len(&self) -> usize {
        self.outcome_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcome_of.is_empty()
    }

    pub fn profile(&self, d: usize) -> usize {
        d % self.profiles
    }

    pub fn rule(&self, d: usize) -> usize {
        d / self.profiles
    }

    pub fn outcome(&self, d: usize) -> usize {
        self.outcome_of[d] as usize
    }

    fn key(&self, projection: Projection, d: usize) -> usize {
        let (x, f, y) = (self.profile(d), self.rule(d), self.outcome(d));
        match projection {
            Projection::Profile => x,
            Projection::Rule => f,
            Projection::Outcome => y,
            Projection::ProfileOutcome => x * self.outcomes + y,
            Projection::RuleOutcome => f * self.outcomes + y,
            Projection::ProfileRule => d,
        }
    }

    fn key_space(&self, projection: Projection) -> usize {
        match projection {
            Projection::Profile => self.profiles,
            Projection::Rule => self.rules,
            Projection::Outcome => self.outcomes,
            Projection::ProfileOutcome => self.profiles * self.outcomes,
            Projection::RuleOutcome => self.rules * self.outcomes,
            Projection::ProfileRule => self.len(),
        }
    }

    /// First pair of decisions `(obeying, violating)` sharing a fiber, if any.
    pub fn split(&self, bits: &BitSet, projection: Projection) -> Option<(usize, usize)> {
        const UNSEEN: usize = usize::MAX;
        let mut first = vec![UNSEEN; self.key_space(projection)];
        for d in 0..self.len() {
            let k = self.key(projection, d);
            let seen = first[k];
            if seen == UNSEEN {
                first[k] = d;
            } else if bits.get(seen) != bits.get(d) {
                return Some(if bits.get(seen) { (seen, d) } else { (d, seen) });
            }
        }
        None
    }

    /// Classes that hold for the truth table `bits`, with the split indices of failures.
    pub fn classes(&self, bits: &BitSet) -> (BTreeSet<AxiomClass>, BTreeMap<AxiomClass, RawWitness>) {
        let mut holds = BTreeSet::new();
        let mut failed = BTreeMap::new();
        let ones = bits.count_ones();
        let obeying = bits.ones().next();
        let violating = (0..self.len()).find(|&d| !bits.get(d));
        match violating {
            None => {
                holds.insert(AxiomClass::PositivelyTrivial);
            }
            Some(v) => {
                failed.insert(AxiomClass::PositivelyTrivial, RawWitness::Violates(v));
            }
        }
        match obeying {
            None => {
                holds.insert(AxiomClass::NegativelyTrivial);
            }
            Some(o) => {
                failed.insert(AxiomClass::NegativelyTrivial, RawWitness::Obeys(o));
            }
        }
        let trivial = ones == 0 || ones == self.len();
        for class in [
            AxiomClass::Structural,
            AxiomClass::Procedural,
            AxiomClass::Consequentialist,
            AxiomClass::Blackbox,
            AxiomClass::Caudal,
        ] {
            let split = if trivial { None } else { self.split(bits, class.projection().unwrap()) };
            match split {
                None => {
                    holds.insert(class);
                }
                Some((o, v)) => {
                    failed.insert(class, RawWitness::Split(o, v));
                }
            }
        }
        (holds, failed)
    }
}

/// Witness by decision index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RawWitness {
    Violates(usize),
    Obeys(usize),
    Split(usize, usize),
}

fn resolve(domain: &DecisionDomain, w: RawWitness) -> Witness {
    let at = |i| domain.decision_at(i).expect("witness index within decision space");
    match w {
        RawWitness::Violates(i) => Witness::Violates(at(i)),
        RawWitness::Obeys(i) => Witness::Obeys(at(i)),
        RawWitness::Split(o, v) => Witness::Split { obeying: at(o), violating: at(v) },
    }
}

/// Exhaustive classification over the enumerated decision space.
pub fn classify(axiom: &Axiom, cap: u64) -> Result<ClassSet> {
    let domain = axiom.domain();
    let index = DecisionIndex::new(domain, cap)?;
    let bits = axiom.truth_table(cap)?;
    let (holds, failed) = index.classes(&bits);
    let witnesses = failed.into_iter().map(|(c, w)| (c, resolve(domain, w))).collect();
    Ok(ClassSet::finish(holds, witnesses, axiom, ClassificationMethod::Exhaustive))
}

/// Whether the axiom is constant on every fiber of `projection`; returns the
/// first splitting pair otherwise.
pub fn fiber_witness(axiom: &Axiom, projection: Projection, cap: u64) -> Result<Option<Witness>> {
    let index = DecisionIndex::new(axiom.domain(), cap)?;
    let bits = axiom.truth_table(cap)?;
    Ok(index
        .split(&bits, projection)
        .map(|(o, v)| resolve(axiom.domain(), RawWitness::Split(o, v))))
}

pub fn is_trivial(axiom: &Axiom, cap: u64) -> Result<Triviality> {
    let bits = axiom.truth_table(cap)?;
    Ok(match bits.count_ones() {
        0 => Triviality::Negatively,
        n if n == bits.len() => Triviality::Positively,
        _ => Triviality::NonTrivial,
    })
}

/// Classification that works beyond the enumeration cap.
///
/// On enumerable domains this is [`classify`]. Otherwise classes are decided
/// from two sound sources: declared requirements establish that a class holds,
/// and splits among decisions built from `pool` (every pool rule at every
/// profile) refute a class. Any class left undecided is an error; no class is
/// ever inferred from the absence of a counterexample.
pub fn classify_with_pool(axiom: &Axiom, pool: &[Arc<RuleTable>], cap: u64) -> Result<ClassSet> {
    let domain = axiom.domain();
    if domain.decisions_within(cap).is_ok() {
        return classify(axiom, cap);
    }
    let mut rules: Vec<Arc<RuleTable>> = Vec::new();
    for r in pool {
        domain.check_rule(r)?;
        if !rules.iter().any(|s| s.same_function(r)) {
            rules.push(Arc::clone(r));
        }
    }
    let mut decisions = Vec::with_capacity(rules.len() * domain.profile_count());
    for (ri, rule) in rules.iter().enumerate() {
        for x in domain.profile_ids() {
            let d = domain.make_decision(x, rule)?;
            let v = axiom.evaluate(&d)?;
            decisions.push((ri, d, v));
        }
    }

    let mut refuted: BTreeMap<AxiomClass, Witness> = BTreeMap::new();
    if let Some((_, d, _)) = decisions.iter().find(|(_, _, v)| !v) {
        refuted.insert(AxiomClass::PositivelyTrivial, Witness::Violates(d.clone()));
    }
    if let Some((_, d, _)) = decisions.iter().find(|(_, _, v)| *v) {
        refuted.insert(AxiomClass::NegativelyTrivial, Witness::Obeys(d.clone()));
    }
    for class in [
        AxiomClass::Structural,
        AxiomClass::Procedural,
        AxiomClass::Consequentialist,
        AxiomClass::Blackbox,
        AxiomClass::Caudal,
    ] {
        let (px, pf, py) = class.projection().unwrap().components();
        let mut first: HashMap<FiberKey, usize> = HashMap::new();
        for (i, (ri, d, v)) in decisions.iter().enumerate() {
            let key = (
                px.then_some(d.profile()),
                pf.then_some(*ri),
                py.then_some(d.outcome().0),
            );
            match first.get(&key) {
                None => {
                    first.insert(key, i);
                }
                Some(&j) if decisions[j].2 != *v => {
                    let (o, vi) = if *v { (i, j) } else { (j, i) };
                    refuted.insert(
                        class,
                        Witness::Split {
                            obeying: decisions[o].1.clone(),
                            violating: decisions[vi].1.clone(),
                        },
                    );
                    break;
                }
                Some(_) => {}
            }
        }
    }

    let mut holds = BTreeSet::new();
    if let Some(req) = axiom.requirements() {
        for class in AxiomClass::ALL {
            let covered = match class {
                AxiomClass::PositivelyTrivial | AxiomClass::NegativelyTrivial => {
                    req.covered_by(false, false, false)
                        && !refuted.contains_key(&class)
                        && (refuted.contains_key(&AxiomClass::PositivelyTrivial)
                            || refuted.contains_key(&AxiomClass::NegativelyTrivial))
                }
                AxiomClass::Exigent => false,
                _ => {
                    let (x, f, y) = class.projection().unwrap().components();
                    req.covered_by(x, f, y)
                }
            };
            if covered {
                if refuted.contains_key(&class) {
                    return Err(Error::WitnessVerification(format!(
                        "axiom `{}` declares requirements compatible with {} but a split decision pair refutes it",
                        axiom.name(),
                        class.as_str()
                    )));
                }
                holds.insert(class);
            }
        }
    }
    let undecided: Vec<String> = AxiomClass::ALL
        .into_iter()
        .filter(|&c| c != AxiomClass::Exigent && !holds.contains(&c) && !refuted.contains_key(&c))
        .map(|c| c.as_str().to_owned())
        .collect();
    if !undecided.is_empty() {
        return Err(Error::Undetermined { classes: undecided });
    }
    Ok(ClassSet::finish(holds, refuted, axiom, ClassificationMethod::DeclaredAndWitnessed))
}

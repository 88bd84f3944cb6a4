//! Axioms as total 0/1 evaluators over decisions.
//!
//! An [`Axiom`] is either extensional (a bitset over the enumerated decision
//! space) or intensional (a predicate). Intensional axioms may declare which
//! decision components they read; that declaration is a contract and is what
//! allows classification and reduction over rule universes too large to
//! enumerate.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::domain::{Decision, DecisionDomain, OutcomeId, ProfileId, RuleTable};
use crate::error::{Error, Result};

pub type Predicate = Arc<dyn Fn(&Decision) -> bool + Send + Sync>;

/// Per-profile obeying outcomes, each paired with a rule that witnesses it.
pub type DeclaredReduction = Arc<dyn Fn(ProfileId) -> Vec<(OutcomeId, Arc<RuleTable>)> + Send + Sync>;

/// Decision components an axiom reads.
///
/// `needs_outcome_computed` marks axioms that must know `f(x)` rather than
/// just `x` and `f`; it separates irreducible from reducible exigent axioms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoRequirements {
    pub profile: bool,
    pub rule: bool,
    pub outcome: bool,
    #[serde(default)]
    pub needs_outcome_computed: bool,
}

impl InfoRequirements {
    pub const NONE: InfoRequirements =
        InfoRequirements { profile: false, rule: false, outcome: false, needs_outcome_computed: false };

    pub fn new(profile: bool, rule: bool, outcome: bool) -> Self {
        InfoRequirements { profile, rule, outcome, needs_outcome_computed: false }
    }

    pub fn needing_outcome_computed(mut self) -> Self {
        self.needs_outcome_computed = true;
        self
    }

    pub fn union(self, other: InfoRequirements) -> Self {
        InfoRequirements {
            profile: self.profile || other.profile,
            rule: self.rule || other.rule,
            outcome: self.outcome || other.outcome,
            needs_outcome_computed: self.needs_outcome_computed || other.needs_outcome_computed,
        }
    }

    /// Every component read here is also read by `other`.
    pub fn covered_by(self, profile: bool, rule: bool, outcome: bool) -> bool {
        (!self.profile || profile) && (!self.rule || rule) && (!self.outcome || outcome)
    }
}

#[derive(Clone)]
pub struct Intensional {
    predicate: Predicate,
    requirements: Option<InfoRequirements>,
    reduction: Option<DeclaredReduction>,
}

#[derive(Clone)]
pub enum AxiomForm {
    Extensional(BitSet),
    Intensional(Intensional),
}

#[derive(Clone)]
pub struct Axiom {
    name: String,
    domain: Arc<DecisionDomain>,
    form: AxiomForm,
}

impl fmt::Debug for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let form = match &self.form {
            AxiomForm::Extensional(bits) => format!("extensional({} obeying)", bits.count_ones()),
            AxiomForm::Intensional(i) => format!("intensional({:?})", i.requirements),
        };
        f.debug_struct("Axiom").field("name", &self.name).field("form", &form).finish()
    }
}

pub(crate) fn same_domain(a: &Arc<DecisionDomain>, b: &Arc<DecisionDomain>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Axiom {
    pub fn extensional(name: impl Into<String>, domain: Arc<DecisionDomain>, obeys: BitSet) -> Result<Self> {
        let n = domain.decisions_within(u64::MAX)?;
        if obeys.len() != n {
            return Err(Error::DomainMismatch(format!(
                "extensional axiom has {} bits but the domain has {n} decisions",
                obeys.len()
            )));
        }
        Ok(Axiom { name: name.into(), domain, form: AxiomForm::Extensional(obeys) })
    }

    /// The predicate must treat rules as functions: it may read a rule's
    /// table but not its name.
    pub fn intensional<P>(name: impl Into<String>, domain: Arc<DecisionDomain>, predicate: P) -> Self
    where
        P: Fn(&Decision) -> bool + Send + Sync + 'static,
    {
        Axiom {
            name: name.into(),
            domain,
            form: AxiomForm::Intensional(Intensional {
                predicate: Arc::new(predicate),
                requirements: None,
                reduction: None,
            }),
        }
    }

    /// Declares the components the predicate reads. No effect on extensional axioms.
    pub fn requiring(mut self, requirements: InfoRequirements) -> Self {
        if let AxiomForm::Intensional(i) = &mut self.form {
            i.requirements = Some(requirements);
        }
        self
    }

    /// Declares the blackbox reduction `x -> Y_x`. Each outcome must come with
    /// a rule `f` such that `f(x) = y` and the axiom accepts `(x, f, y)`; the
    /// calculus re-verifies those witnesses before using the declaration.
    pub fn with_reduction<R>(mut self, reduction: R) -> Self
    where
        R: Fn(ProfileId) -> Vec<(OutcomeId, Arc<RuleTable>)> + Send + Sync + 'static,
    {
        if let AxiomForm::Intensional(i) = &mut self.form {
            i.reduction = Some(Arc::new(reduction));
        }
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Arc<DecisionDomain> {
        &self.domain
    }

    pub fn form(&self) -> &AxiomForm {
        &self.form
    }

    pub fn is_extensional(&self) -> bool {
        matches!(self.form, AxiomForm::Extensional(_))
    }

    pub fn requirements(&self) -> Option<InfoRequirements> {
        match &self.form {
            AxiomForm::Extensional(_) => None,
            AxiomForm::Intensional(i) => i.requirements,
        }
    }

    pub fn declared_reduction(&self) -> Option<&DeclaredReduction> {
        match &self.form {
            AxiomForm::Extensional(_) => None,
            AxiomForm::Intensional(i) => i.reduction.as_ref(),
        }
    }

    /// `A(x, f, y)`: `true` when the decision obeys the axiom.
    pub fn evaluate(&self, decision: &Decision) -> Result<bool> {
        self.domain.check_profile(decision.profile())?;
        self.domain.check_rule(decision.rule())?;
        Ok(self.evaluate_unchecked(decision))
    }

    /// Evaluation for decisions already known to belong to this axiom's domain.
    pub(crate) fn evaluate_unchecked(&self, decision: &Decision) -> bool {
        match &self.form {
            AxiomForm::Extensional(bits) => {
                let i = self
                    .domain
                    .decision_index(decision)
                    .expect("decision validated against an enumerable domain");
                bits.get(i)
            }
            AxiomForm::Intensional(i) => (i.predicate)(decision),
        }
    }

    /// Obeying set over the enumerated decision space, in decision order.
    pub fn truth_table(&self, cap: u64) -> Result<BitSet> {
        match &self.form {
            AxiomForm::Extensional(bits) => Ok(bits.clone()),
            AxiomForm::Intensional(i) => {
                let n = self.domain.decisions_within(cap)?;
                self.check_determinism(64)?;
                let profiles = self.domain.profile_count();
                let rules = n / profiles;
                let rows: Vec<Vec<bool>> = (0..rules)
                    .into_par_iter()
                    .map(|r| {
                        let rule = self.domain.rule_at(r).expect("rule index in range");
                        (0..profiles)
                            .map(|x| {
                                let d = self
                                    .domain
                                    .make_decision(ProfileId(x), &rule)
                                    .expect("enumerated rule is valid");
                                (i.predicate)(&d)
                            })
                            .collect()
                    })
                    .collect();
                let mut bits = BitSet::new(n);
                for (i, v) in rows.into_iter().flatten().enumerate() {
                    if v {
                        bits.set(i, true);
                    }
                }
                Ok(bits)
            }
        }
    }

    /// Evaluates the first `samples` enumerable decisions twice and compares.
    pub fn check_determinism(&self, samples: usize) -> Result<()> {
        let AxiomForm::Intensional(i) = &self.form else {
            return Ok(());
        };
        let mut seen = 0;
        let rules = self.domain.rule_count().within(u64::MAX).unwrap_or(usize::MAX);
        'outer: for r in 0..rules {
            let Some(rule) = self.domain.rule_at(r) else { break };
            for x in self.domain.profile_ids() {
                if seen == samples {
                    break 'outer;
                }
                let d = self.domain.make_decision(x, &rule)?;
                if (i.predicate)(&d) != (i.predicate)(&d) {
                    return Err(Error::Nondeterministic(self.name.clone()));
                }
                seen += 1;
            }
        }
        Ok(())
    }

    /// Equivalent extensional axiom over the enumerated decision space.
    pub fn materialize(&self, cap: u64) -> Result<Axiom> {
        Axiom::extensional(self.name.clone(), Arc::clone(&self.domain), self.truth_table(cap)?)
    }

    /// The decisions that obey this axiom.
    pub fn characterizing_list(&self, cap: u64) -> Result<DecisionList> {
        let bits = self.truth_table(cap)?;
        let entries = bits
            .ones()
            .map(|i| (i, self.domain.decision_at(i).expect("index within decision space")))
            .collect();
        Ok(DecisionList { domain: Arc::clone(&self.domain), entries })
    }

    /// The extensional axiom obeyed exactly by `list`.
    pub fn from_decision_list(name: impl Into<String>, list: &DecisionList, cap: u64) -> Result<Axiom> {
        let n = list.domain.decisions_within(cap)?;
        let mut bits = BitSet::new(n);
        for &(i, _) in &list.entries {
            bits.set(i, true);
        }
        Axiom::extensional(name, Arc::clone(&list.domain), bits)
    }

    fn check_same_domain(axioms: &[&Axiom]) -> Result<Arc<DecisionDomain>> {
        let first = axioms
            .first()
            .ok_or_else(|| Error::InvalidParameter("combinator needs at least one axiom".into()))?;
        for a in &axioms[1..] {
            if !same_domain(&first.domain, &a.domain) {
                return Err(Error::DomainMismatch(format!(
                    "axioms `{}` and `{}` are defined over different domains",
                    first.name, a.name
                )));
            }
        }
        Ok(Arc::clone(&first.domain))
    }

    fn combine(axioms: &[&Axiom], op: &'static str, conj: bool) -> Result<Axiom> {
        let domain = Self::check_same_domain(axioms)?;
        let name = format!("{op}({})", axioms.iter().map(|a| a.name.as_str()).collect::<Vec<_>>().join(","));
        if let Some(tables) = axioms
            .iter()
            .map(|a| match &a.form {
                AxiomForm::Extensional(bits) => Some(bits),
                AxiomForm::Intensional(_) => None,
            })
            .collect::<Option<Vec<_>>>()
        {
            let mut acc = tables[0].clone();
            for t in &tables[1..] {
                acc = if conj { acc.and(t) } else { acc.or(t) };
            }
            return Axiom::extensional(name, domain, acc);
        }
        let requirements = axioms
            .iter()
            .map(|a| a.declared_requirements())
            .collect::<Option<Vec<_>>>()
            .map(|rs| rs.into_iter().fold(InfoRequirements::NONE, InfoRequirements::union));
        let parts: Vec<Axiom> = axioms.iter().map(|&a| a.clone()).collect();
        let predicate = move |d: &Decision| {
            if conj {
                parts.iter().all(|a| a.evaluate_unchecked(d))
            } else {
                parts.iter().any(|a| a.evaluate_unchecked(d))
            }
        };
        let mut out = Axiom::intensional(name, domain, predicate);
        if let Some(r) = requirements {
            out = out.requiring(r);
        }
        Ok(out)
    }

    /// Requirements that are exact for this axiom: declared ones, or none at all
    /// for an extensional axiom (which is read through its full decision).
    fn declared_requirements(&self) -> Option<InfoRequirements> {
        match &self.form {
            AxiomForm::Extensional(_) => None,
            AxiomForm::Intensional(i) => i.requirements,
        }
    }

    /// Pointwise minimum.
    pub fn and(axioms: &[&Axiom]) -> Result<Axiom> {
        Self::combine(axioms, "and", true)
    }

    /// Pointwise maximum.
    pub fn or(axioms: &[&Axiom]) -> Result<Axiom> {
        Self::combine(axioms, "or", false)
    }

    /// Complement over the decision space.
    pub fn negate(&self) -> Axiom {
        let name = format!("not({})", self.name);
        match &self.form {
            AxiomForm::Extensional(bits) => Axiom {
                name,
                domain: Arc::clone(&self.domain),
                form: AxiomForm::Extensional(bits.complement()),
            },
            AxiomForm::Intensional(i) => {
                let inner = i.predicate.clone();
                let mut out =
                    Axiom::intensional(name, Arc::clone(&self.domain), move |d: &Decision| !inner(d));
                if let Some(r) = i.requirements {
                    out = out.requiring(r);
                }
                out
            }
        }
    }

    // Built-in constructors. Each is exact by construction, so its declared
    // requirements are the ones its class needs.

    pub fn positively_trivial(domain: Arc<DecisionDomain>) -> Axiom {
        Axiom::intensional("positively-trivial", domain, |_| true).requiring(InfoRequirements::NONE)
    }

    pub fn negatively_trivial(domain: Arc<DecisionDomain>) -> Axiom {
        Axiom::intensional("negatively-trivial", domain, |_| false).requiring(InfoRequirements::NONE)
    }

    /// Obeyed iff the profile is in `profiles`.
    pub fn structural(domain: Arc<DecisionDomain>, profiles: &[ProfileId]) -> Result<Axiom> {
        for &x in profiles {
            domain.check_profile(x)?;
        }
        let set: HashSet<ProfileId> = profiles.iter().copied().collect();
        Ok(Axiom::intensional("structural", domain, move |d| set.contains(&d.profile()))
            .requiring(InfoRequirements::new(true, false, false)))
    }

    /// Obeyed iff the rule is one of `rules` (compared as functions).
    pub fn procedural(domain: Arc<DecisionDomain>, rules: &[Arc<RuleTable>]) -> Result<Axiom> {
        for r in rules {
            domain.check_rule(r)?;
        }
        let set: HashSet<RuleTable> = rules.iter().map(|r| (**r).clone()).collect();
        Ok(Axiom::intensional("procedural", domain, move |d| set.contains(&**d.rule()))
            .requiring(InfoRequirements::new(false, true, false)))
    }

    /// Obeyed iff the outcome is in `outcomes`.
    pub fn consequentialist(domain: Arc<DecisionDomain>, outcomes: &[OutcomeId]) -> Result<Axiom> {
        for &y in outcomes {
            domain.check_outcome(y)?;
        }
        let set: HashSet<OutcomeId> = outcomes.iter().copied().collect();
        Ok(Axiom::intensional("consequentialist", domain, move |d| set.contains(&d.outcome()))
            .requiring(InfoRequirements::new(false, false, true)))
    }

    /// Obeyed iff `(x, y)` is listed.
    pub fn blackbox(domain: Arc<DecisionDomain>, pairs: &[(ProfileId, OutcomeId)]) -> Result<Axiom> {
        for &(x, y) in pairs {
            domain.check_profile(x)?;
            domain.check_outcome(y)?;
        }
        let set: HashSet<(ProfileId, OutcomeId)> = pairs.iter().copied().collect();
        Ok(Axiom::intensional("blackbox", domain, move |d| set.contains(&(d.profile(), d.outcome())))
            .requiring(InfoRequirements::new(true, false, true)))
    }

    /// Obeyed iff `(f, y)` is listed.
    pub fn caudal(domain: Arc<DecisionDomain>, pairs: &[(Arc<RuleTable>, OutcomeId)]) -> Result<Axiom> {
        for (f, y) in pairs {
            domain.check_rule(f)?;
            domain.check_outcome(*y)?;
        }
        let set: HashSet<(RuleTable, OutcomeId)> = pairs.iter().map(|(f, y)| ((**f).clone(), *y)).collect();
        Ok(Axiom::intensional("caudal", domain, move |d| set.contains(&((**d.rule()).clone(), d.outcome())))
            .requiring(InfoRequirements::new(false, true, true)))
    }

    /// `A_1`: obeyed iff `(x, y)` is in the profile-outcome list `pairs`.
    pub fn list_membership(domain: Arc<DecisionDomain>, pairs: &[(ProfileId, OutcomeId)]) -> Result<Axiom> {
        Ok(Self::blackbox(domain, pairs)?.renamed("list-membership"))
    }

    /// `A_2`: obeyed iff the rule is `rule` as a function.
    pub fn rule_identity(domain: Arc<DecisionDomain>, rule: &Arc<RuleTable>) -> Result<Axiom> {
        Ok(Self::procedural(domain, std::slice::from_ref(rule))?.renamed("rule-identity"))
    }
}

/// An ordered, duplicate-free set of decisions over one enumerable domain.
#[derive(Clone, Debug)]
pub struct DecisionList {
    domain: Arc<DecisionDomain>,
    entries: Vec<(usize, Decision)>,
}

impl DecisionList {
    pub fn new(domain: Arc<DecisionDomain>, decisions: impl IntoIterator<Item = Decision>) -> Result<Self> {
        let mut entries = Vec::new();
        for d in decisions {
            domain.check_profile(d.profile())?;
            domain.check_rule(d.rule()).map_err(|e| Error::InvalidDecision(e.to_string()))?;
            entries.push((domain.decision_index(&d)?, d));
        }
        entries.sort_by_key(|(i, _)| *i);
        entries.dedup_by_key(|(i, _)| *i);
        Ok(DecisionList { domain, entries })
    }

    pub fn domain(&self) -> &Arc<DecisionDomain> {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn decisions(&self) -> impl Iterator<Item = &Decision> {
        self.entries.iter().map(|(_, d)| d)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }
}

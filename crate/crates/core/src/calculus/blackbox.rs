use std::sync::Arc;

use crate::axiom::{same_domain, Axiom, InfoRequirements};
use crate::bitset::BitSet;
use crate::domain::{DecisionDomain, OutcomeId, ProfileId, RuleTable, RuleUniverse};
use crate::error::{Cardinality, Error, Result};
use crate::taxonomy::DecisionIndex;

/// A set `B` of profile-outcome pairs; `Y_x` is the slice of outcomes paired with `x`.
#[derive(Clone, Debug)]
pub struct BlackboxList {
    domain: Arc<DecisionDomain>,
    pairs: BitSet,
}

impl PartialEq for BlackboxList {
    fn eq(&self, other: &Self) -> bool {
        same_domain(&self.domain, &other.domain) && self.pairs == other.pairs
    }
}

impl Eq for BlackboxList {}

impl BlackboxList {
    pub fn empty(domain: Arc<DecisionDomain>) -> Self {
        let n = domain.profile_count() * domain.outcome_count();
        BlackboxList { domain, pairs: BitSet::new(n) }
    }

    pub fn from_pairs(
        domain: Arc<DecisionDomain>,
        pairs: impl IntoIterator<Item = (ProfileId, OutcomeId)>,
    ) -> Result<Self> {
        let mut list = Self::empty(domain);
        for (x, y) in pairs {
            list.domain.check_profile(x)?;
            list.domain.check_outcome(y)?;
            list.insert(x, y);
        }
        Ok(list)
    }

    /// Pairs encoded as bits `x * |Y| + y`.
    pub fn from_bits(domain: Arc<DecisionDomain>, pairs: BitSet) -> Result<Self> {
        let n = domain.profile_count() * domain.outcome_count();
        if pairs.len() != n {
            return Err(Error::DomainMismatch(format!(
                "blackbox list has {} bits but the domain has {n} profile-outcome pairs",
                pairs.len()
            )));
        }
        Ok(BlackboxList { domain, pairs })
    }

    fn slot(&self, x: ProfileId, y: OutcomeId) -> usize {
        x.0 * self.domain.outcome_count() + y.0
    }

    fn insert(&mut self, x: ProfileId, y: OutcomeId) {
        let i = self.slot(x, y);
        self.pairs.set(i, true);
    }

    pub fn domain(&self) -> &Arc<DecisionDomain> {
        &self.domain
    }

    pub fn bits(&self) -> &BitSet {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, x: ProfileId, y: OutcomeId) -> bool {
        x.0 < self.domain.profile_count() && y.0 < self.domain.outcome_count() && self.pairs.get(self.slot(x, y))
    }

    pub fn pairs(&self) -> Vec<(ProfileId, OutcomeId)> {
        let m = self.domain.outcome_count();
        self.pairs.ones().map(|i| (ProfileId(i / m), OutcomeId(i % m))).collect()
    }

    /// `Y_x`.
    pub fn slice(&self, x: ProfileId) -> Vec<OutcomeId> {
        self.domain.outcome_ids().filter(|&y| self.contains(x, y)).collect()
    }

    /// Profiles with an empty slice.
    pub fn impasses(&self) -> Vec<ProfileId> {
        self.domain.profile_ids().filter(|&x| self.slice(x).is_empty()).collect()
    }

    pub fn is_implementable(&self) -> bool {
        self.domain.profile_ids().all(|x| !self.slice(x).is_empty())
    }

    /// Every slice is a singleton.
    pub fn is_forcing(&self) -> bool {
        self.domain.profile_ids().all(|x| self.slice(x).len() == 1)
    }

    pub fn forced_outcome(&self, x: ProfileId) -> Result<OutcomeId> {
        self.domain.check_profile(x)?;
        match self.slice(x).as_slice() {
            [y] => Ok(*y),
            other => Err(Error::NotForcing {
                profile: self.domain.profile_label(x).to_owned(),
                outcomes: other.len(),
            }),
        }
    }

    /// The blackbox axiom `A_B`.
    pub fn as_axiom(&self) -> Axiom {
        let list = self.clone();
        Axiom::intensional("blackbox", Arc::clone(&self.domain), move |d| list.contains(d.profile(), d.outcome()))
            .requiring(InfoRequirements::new(true, false, true))
    }
}

/// Blackbox reduction of a truth table: `B = {(x, y) : (x, f, y) obeys}`.
pub(crate) fn reduce_table(domain: &Arc<DecisionDomain>, index: &DecisionIndex, bits: &BitSet) -> BlackboxList {
    let mut list = BlackboxList::empty(Arc::clone(domain));
    for d in bits.ones() {
        list.insert(ProfileId(index.profile(d)), OutcomeId(index.outcome(d)));
    }
    list
}

/// Reduces an axiom to the unique blackbox list of profile-outcome pairs its
/// obeying decisions realize.
///
/// Enumerable domains are reduced by scanning every obeying decision. Beyond
/// the cap two exact routes remain: an axiom declared to read only `(x, y)`
/// is probed with constant rules (every `(x, y)` is realized by one when the
/// universe holds all functions), and an axiom with a declared reduction has
/// each of its witness rules re-checked before the declaration is accepted.
pub fn reduce_to_blackbox(axiom: &Axiom, cap: u64) -> Result<BlackboxList> {
    let domain = axiom.domain();
    if axiom.is_extensional() || domain.decisions_within(cap).is_ok() {
        let index = DecisionIndex::new(domain, cap)?;
        let bits = axiom.truth_table(cap)?;
        return Ok(reduce_table(domain, &index, &bits));
    }
    let reads_only_profile_outcome = axiom.requirements().is_some_and(|r| r.covered_by(true, false, true));
    if reads_only_profile_outcome && matches!(domain.universe(), RuleUniverse::AllFunctions) {
        let constants: Vec<_> = domain.outcome_ids().map(|y| domain.constant_rule(y)).collect::<Result<_>>()?;
        let mut list = BlackboxList::empty(Arc::clone(domain));
        for x in domain.profile_ids() {
            for (y, rule) in domain.outcome_ids().zip(&constants) {
                if axiom.evaluate(&domain.make_decision(x, rule)?)? {
                    list.insert(x, y);
                }
            }
        }
        return Ok(list);
    }
    if let Some(declared) = axiom.declared_reduction() {
        let mut list = BlackboxList::empty(Arc::clone(domain));
        for x in domain.profile_ids() {
            for (y, rule) in declared(x) {
                let d = domain.make_decision(x, &rule)?;
                if d.outcome() != y || !axiom.evaluate(&d)? {
                    return Err(Error::WitnessVerification(format!(
                        "declared reduction of `{}` pairs `{}` with `{}` but rule `{}` does not witness it",
                        axiom.name(),
                        domain.profile_label(x),
                        domain.outcome_label(y),
                        domain.rule_label(&rule)
                    )));
                }
                list.insert(x, y);
            }
        }
        return Ok(list);
    }
    Err(Error::CapExceeded { what: "decision space", count: domain.decision_count(), cap })
}

/// Whether two axioms reduce to the same blackbox list.
pub fn extensionally_equivalent(a: &Axiom, b: &Axiom, cap: u64) -> Result<bool> {
    if !same_domain(a.domain(), b.domain()) {
        return Err(Error::DomainMismatch(format!(
            "axioms `{}` and `{}` are defined over different domains",
            a.name(),
            b.name()
        )));
    }
    Ok(reduce_to_blackbox(a, cap)? == reduce_to_blackbox(b, cap)?)
}

/// `F = {f : for all x, (x, f(x)) in B}`: membership is a predicate; listing is optional.
#[derive(Clone, Debug)]
pub struct ProceduralExtension {
    blackbox: BlackboxList,
}

pub fn procedural_extension(blackbox: &BlackboxList) -> ProceduralExtension {
    ProceduralExtension { blackbox: blackbox.clone() }
}

impl ProceduralExtension {
    pub fn blackbox(&self) -> &BlackboxList {
        &self.blackbox
    }

    pub fn contains(&self, rule: &RuleTable) -> bool {
        let domain = &self.blackbox.domain;
        domain.check_rule(rule).is_ok()
            && domain.profile_ids().all(|x| self.blackbox.contains(x, rule.get(x).expect("rule checked")))
    }

    /// |F|.
    pub fn count(&self) -> Cardinality {
        let domain = &self.blackbox.domain;
        match domain.universe() {
            RuleUniverse::AllFunctions => domain.profile_ids().try_fold(Cardinality::Finite(1), |acc, x| {
                let k = self.blackbox.slice(x).len();
                if k == 0 {
                    return Err(());
                }
                Ok(acc.times(k))
            })
            .unwrap_or(Cardinality::Finite(0)),
            RuleUniverse::Explicit(e) => {
                Cardinality::Finite(e.rules().iter().filter(|r| self.contains(r)).count() as u128)
            }
        }
    }

    pub fn is_negatively_trivial(&self) -> bool {
        self.count() == Cardinality::Finite(0)
    }

    /// Members in universe order.
    pub fn rules(&self, cap: u64) -> Result<Vec<Arc<RuleTable>>> {
        let domain = &self.blackbox.domain;
        let count = self.count();
        let n = count.within(cap).ok_or(Error::CapExceeded { what: "procedural extension", count, cap })?;
        match domain.universe() {
            RuleUniverse::Explicit(e) => Ok(e.rules().iter().filter(|r| self.contains(r)).cloned().collect()),
            RuleUniverse::AllFunctions => {
                let slices: Vec<Vec<OutcomeId>> = domain.profile_ids().map(|x| self.blackbox.slice(x)).collect();
                let mut out = Vec::with_capacity(n);
                let mut digits = vec![0usize; slices.len()];
                for _ in 0..n {
                    let map: Vec<OutcomeId> = digits.iter().zip(&slices).map(|(&d, s)| s[d]).collect();
                    out.push(name_rule(domain, RuleTable::new(map)));
                    for (pos, slice) in digits.iter_mut().zip(&slices).rev() {
                        *pos += 1;
                        if *pos < slice.len() {
                            break;
                        }
                        *pos = 0;
                    }
                }
                Ok(out)
            }
        }
    }

    /// The procedural axiom characterized by `F`.
    pub fn as_axiom(&self) -> Axiom {
        let ext = self.clone();
        Axiom::intensional("procedural-extension", Arc::clone(&self.blackbox.domain), move |d| ext.contains(d.rule()))
            .requiring(InfoRequirements::new(false, true, false))
    }
}

/// Gives small all-function rules their `f<n>` universe name.
pub(crate) fn name_rule(domain: &DecisionDomain, rule: RuleTable) -> Arc<RuleTable> {
    match domain.rule_index(&rule).and_then(|i| domain.rule_at(i)) {
        Some(named) if domain.profile_count() <= 8 || matches!(domain.universe(), RuleUniverse::Explicit(_)) => named,
        _ => Arc::new(rule),
    }
}

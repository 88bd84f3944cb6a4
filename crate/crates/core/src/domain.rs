//! Finite profile, outcome and rule spaces, and the decisions they generate.
//!
//! Profiles and outcomes are opaque labels with optional JSON payloads. A rule
//! is a total table from profiles to outcomes and is compared extensionally:
//! two tables with the same mapping are the same rule whatever their names.
//!
//! When the universe is every function `X -> Y`, rules are numbered by
//! mixed-radix counting where profile 0 is the most significant digit and each
//! digit is an outcome index. On `X = {x1, x2}`, `Y = {y1, y2}` this yields
//! `f1 = (y1, y1)`, `f2 = (y1, y2)`, `f3 = (y2, y1)`, `f4 = (y2, y2)`.
//! Decisions are numbered rule-major: `index = rule_index * |X| + profile`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Cardinality, Error, Result};

/// Default bound on the number of objects any enumeration may materialize.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProfileId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OutcomeId(pub usize);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Element {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<serde_json::Value>,
}

impl Element {
    pub fn new(id: impl Into<String>) -> Self {
        Element { id: id.into(), payload: None }
    }

    pub fn with_payload(id: impl Into<String>, payload: serde_json::Value) -> Self {
        Element { id: id.into(), payload: Some(payload) }
    }
}

/// Non-empty ordered set of uniquely labelled elements.
#[derive(Clone, Debug)]
pub struct LabelSpace {
    elements: Vec<Element>,
    index: HashMap<String, usize>,
}

pub type ProfileSpace = LabelSpace;
pub type OutcomeSpace = LabelSpace;

impl LabelSpace {
    pub fn new(elements: Vec<Element>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidDomain("label space must be non-empty".into()));
        }
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.id.clone(), i).is_some() {
                return Err(Error::InvalidDomain(format!("duplicate identifier `{}`", e.id)));
            }
        }
        Ok(LabelSpace { elements, index })
    }

    pub fn from_labels<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(labels.into_iter().map(Element::new).collect())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i].id
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }
}

impl PartialEq for LabelSpace {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

/// A total function from profiles to outcomes.
#[derive(Clone, Debug)]
pub struct RuleTable {
    name: Option<String>,
    map: Vec<OutcomeId>,
}

impl RuleTable {
    pub fn new(map: Vec<OutcomeId>) -> Self {
        RuleTable { name: None, map }
    }

    pub fn named(name: impl Into<String>, map: Vec<OutcomeId>) -> Self {
        RuleTable { name: Some(name.into()), map }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn outcomes(&self) -> &[OutcomeId] {
        &self.map
    }

    /// Outcome at `profile`, or `None` when the profile is outside the table.
    pub fn get(&self, profile: ProfileId) -> Option<OutcomeId> {
        self.map.get(profile.0).copied()
    }

    /// Same mapping, ignoring names.
    pub fn same_function(&self, other: &RuleTable) -> bool {
        self.map == other.map
    }
}

impl PartialEq for RuleTable {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl Eq for RuleTable {}

impl Hash for RuleTable {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.map.hash(state);
    }
}

#[derive(Clone, Debug)]
pub struct ExplicitRules {
    rules: Vec<Arc<RuleTable>>,
    index: HashMap<Vec<OutcomeId>, usize>,
}

impl ExplicitRules {
    pub fn rules(&self) -> &[Arc<RuleTable>] {
        &self.rules
    }
}

#[derive(Clone, Debug)]
pub enum RuleUniverse {
    /// Every function from profiles to outcomes.
    AllFunctions,
    /// A listed subset, pairwise distinct as functions.
    Explicit(ExplicitRules),
}

impl PartialEq for RuleUniverse {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (RuleUniverse::AllFunctions, RuleUniverse::AllFunctions) => true,
            (RuleUniverse::Explicit(a), RuleUniverse::Explicit(b)) => {
                a.rules.len() == b.rules.len()
                    && a.rules.iter().zip(&b.rules).all(|(r, s)| r == s && r.name == s.name)
            }
            _ => false,
        }
    }
}

/// A validated `(x, f, y)` triple with `f(x) = y`.
///
/// Only [`DecisionDomain::make_decision`] constructs these, so a triple with
/// `f(x) != y` cannot be represented.
#[derive(Clone, Debug)]
pub struct Decision {
    profile: ProfileId,
    rule: Arc<RuleTable>,
    outcome: OutcomeId,
}

impl Decision {
    pub fn profile(&self) -> ProfileId {
        self.profile
    }

    pub fn rule(&self) -> &Arc<RuleTable> {
        &self.rule
    }

    pub fn outcome(&self) -> OutcomeId {
        self.outcome
    }
}

impl PartialEq for Decision {
    fn eq(&self, other: &Self) -> bool {
        self.profile == other.profile && self.outcome == other.outcome && *self.rule == *other.rule
    }
}

impl Eq for Decision {}

#[derive(Clone, Debug)]
pub struct DecisionDomain {
    profiles: ProfileSpace,
    outcomes: OutcomeSpace,
    rules: RuleUniverse,
    generator: Option<serde_json::Value>,
}

impl PartialEq for DecisionDomain {
    fn eq(&self, other: &Self) -> bool {
        self.profiles == other.profiles
            && self.outcomes == other.outcomes
            && self.rules == other.rules
            && self.generator == other.generator
    }
}

impl DecisionDomain {
    /// Domain whose universe is every function `profiles -> outcomes`.
    pub fn all_functions(profiles: ProfileSpace, outcomes: OutcomeSpace) -> Self {
        DecisionDomain { profiles, outcomes, rules: RuleUniverse::AllFunctions, generator: None }
    }

    /// Domain restricted to the listed rules.
    pub fn explicit(
        profiles: ProfileSpace,
        outcomes: OutcomeSpace,
        rules: Vec<RuleTable>,
    ) -> Result<Self> {
        let mut list = Vec::with_capacity(rules.len());
        let mut index = HashMap::with_capacity(rules.len());
        for (i, rule) in rules.into_iter().enumerate() {
            Self::check_shape(&profiles, &outcomes, &rule)?;
            let label = rule.name().map_or_else(|| format!("#{i}"), str::to_owned);
            if index.insert(rule.map.clone(), i).is_some() {
                return Err(Error::InvalidDomain(format!(
                    "rule `{label}` duplicates an earlier rule as a function"
                )));
            }
            list.push(Arc::new(rule));
        }
        if list.is_empty() {
            return Err(Error::InvalidDomain("explicit rule universe must be non-empty".into()));
        }
        let names: Vec<_> = list.iter().filter_map(|r| r.name()).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::InvalidDomain("rule names must be unique".into()));
        }
        Ok(DecisionDomain {
            profiles,
            outcomes,
            rules: RuleUniverse::Explicit(ExplicitRules { rules: list, index }),
            generator: None,
        })
    }

    /// Attaches generator metadata (e.g. the voting configuration that built it).
    pub fn with_generator(mut self, generator: serde_json::Value) -> Self {
        self.generator = Some(generator);
        self
    }

    pub fn generator(&self) -> Option<&serde_json::Value> {
        self.generator.as_ref()
    }

    pub fn profiles(&self) -> &ProfileSpace {
        &self.profiles
    }

    pub fn outcomes(&self) -> &OutcomeSpace {
        &self.outcomes
    }

    pub fn universe(&self) -> &RuleUniverse {
        &self.rules
    }

    pub fn profile_count(&self) -> usize {
        self.profiles.len()
    }

    pub fn outcome_count(&self) -> usize {
        self.outcomes.len()
    }

    pub fn profile_ids(&self) -> impl Iterator<Item = ProfileId> + Clone {
        (0..self.profiles.len()).map(ProfileId)
    }

    pub fn outcome_ids(&self) -> impl Iterator<Item = OutcomeId> + Clone {
        (0..self.outcomes.len()).map(OutcomeId)
    }

    pub fn profile(&self, label: &str) -> Result<ProfileId> {
        self.profiles
            .position(label)
            .map(ProfileId)
            .ok_or_else(|| Error::UnknownProfile(label.to_owned()))
    }

    pub fn outcome(&self, label: &str) -> Result<OutcomeId> {
        self.outcomes
            .position(label)
            .map(OutcomeId)
            .ok_or_else(|| Error::UnknownOutcome(label.to_owned()))
    }

    pub fn profile_label(&self, id: ProfileId) -> &str {
        self.profiles.label(id.0)
    }

    pub fn outcome_label(&self, id: OutcomeId) -> &str {
        self.outcomes.label(id.0)
    }

    pub fn check_profile(&self, id: ProfileId) -> Result<()> {
        if id.0 < self.profiles.len() {
            Ok(())
        } else {
            Err(Error::UnknownProfile(format!("#{}", id.0)))
        }
    }

    pub fn check_outcome(&self, id: OutcomeId) -> Result<()> {
        if id.0 < self.outcomes.len() {
            Ok(())
        } else {
            Err(Error::UnknownOutcome(format!("#{}", id.0)))
        }
    }

    /// |F|: `|Y|^|X|` for all functions, the list length otherwise.
    pub fn rule_count(&self) -> Cardinality {
        match &self.rules {
            RuleUniverse::AllFunctions => {
                Cardinality::of_power(self.outcomes.len(), self.profiles.len())
            }
            RuleUniverse::Explicit(e) => Cardinality::Finite(e.rules.len() as u128),
        }
    }

    /// |D| = |X| * |F|.
    pub fn decision_count(&self) -> Cardinality {
        self.rule_count().times(self.profiles.len())
    }

    /// Number of decisions when it is at most `cap`, otherwise a cap error.
    pub fn decisions_within(&self, cap: u64) -> Result<usize> {
        let count = self.decision_count();
        count.within(cap).ok_or(Error::CapExceeded { what: "decision space", count, cap })
    }

    /// Number of rules when it is at most `cap`, otherwise a cap error.
    pub fn rules_within(&self, cap: u64) -> Result<usize> {
        let count = self.rule_count();
        count.within(cap).ok_or(Error::CapExceeded { what: "rule universe", count, cap })
    }

    fn check_shape(profiles: &ProfileSpace, outcomes: &OutcomeSpace, rule: &RuleTable) -> Result<()> {
        if rule.map.len() != profiles.len() {
            return Err(Error::DomainMismatch(format!(
                "rule covers {} profiles but the domain has {}",
                rule.map.len(),
                profiles.len()
            )));
        }
        if let Some(bad) = rule.map.iter().find(|y| y.0 >= outcomes.len()) {
            return Err(Error::DomainMismatch(format!(
                "rule maps to outcome #{} outside the outcome space",
                bad.0
            )));
        }
        Ok(())
    }

    /// Checks that `rule` is a total table over this domain and a member of its universe.
    pub fn check_rule(&self, rule: &RuleTable) -> Result<()> {
        Self::check_shape(&self.profiles, &self.outcomes, rule)?;
        if let RuleUniverse::Explicit(e) = &self.rules {
            if !e.index.contains_key(&rule.map) {
                return Err(Error::UnknownRule(self.rule_label(rule)));
            }
        }
        Ok(())
    }

    /// `f(x)`.
    pub fn apply(&self, rule: &RuleTable, profile: ProfileId) -> Result<OutcomeId> {
        self.check_profile(profile)?;
        Self::check_shape(&self.profiles, &self.outcomes, rule)?;
        Ok(rule.map[profile.0])
    }

    /// `(x, f, f(x))`; the only way to obtain a [`Decision`].
    pub fn make_decision(&self, profile: ProfileId, rule: &Arc<RuleTable>) -> Result<Decision> {
        self.check_profile(profile)?;
        self.check_rule(rule)?;
        Ok(Decision { profile, rule: Arc::clone(rule), outcome: rule.map[profile.0] })
    }

    pub fn is_decision(&self, profile: ProfileId, rule: &RuleTable, outcome: OutcomeId) -> Result<bool> {
        self.check_outcome(outcome)?;
        Ok(self.apply(rule, profile)? == outcome)
    }

    /// Position of `rule` in the enumeration order, when the universe index fits.
    pub fn rule_index(&self, rule: &RuleTable) -> Option<usize> {
        match &self.rules {
            RuleUniverse::AllFunctions => {
                if rule.map.len() != self.profiles.len() {
                    return None;
                }
                let base = self.outcomes.len();
                rule.map.iter().try_fold(0usize, |acc, y| {
                    if y.0 >= base {
                        return None;
                    }
                    acc.checked_mul(base)?.checked_add(y.0)
                })
            }
            RuleUniverse::Explicit(e) => e.index.get(&rule.map).copied(),
        }
    }

    /// Rule at position `index` of the enumeration order.
    pub fn rule_at(&self, index: usize) -> Option<Arc<RuleTable>> {
        match &self.rules {
            RuleUniverse::AllFunctions => {
                if let Some(n) = self.rule_count().within(u64::MAX) {
                    if index >= n {
                        return None;
                    }
                }
                let base = self.outcomes.len();
                let mut map = vec![OutcomeId(0); self.profiles.len()];
                let mut rest = index;
                for slot in map.iter_mut().rev() {
                    *slot = OutcomeId(rest % base);
                    rest /= base;
                }
                if rest != 0 {
                    return None;
                }
                Some(Arc::new(RuleTable::named(format!("f{}", index + 1), map)))
            }
            RuleUniverse::Explicit(e) => e.rules.get(index).cloned(),
        }
    }

    /// Human label: the table's name, its universe position (`f<n>`), or its mapping.
    pub fn rule_label(&self, rule: &RuleTable) -> String {
        if let Some(name) = rule.name() {
            return name.to_owned();
        }
        match (&self.rules, self.rule_index(rule)) {
            (RuleUniverse::Explicit(e), Some(i)) => {
                e.rules[i].name().map_or_else(|| format!("#{i}"), str::to_owned)
            }
            (RuleUniverse::AllFunctions, Some(i)) if self.profiles.len() <= 8 => {
                format!("f{}", i + 1)
            }
            _ => self.render_map(rule),
        }
    }

    fn render_map(&self, rule: &RuleTable) -> String {
        let body: Vec<String> = rule
            .map
            .iter()
            .enumerate()
            .map(|(x, y)| {
                let out = self.outcomes.elements.get(y.0).map_or("?", |e| e.id.as_str());
                let prof = self.profiles.elements.get(x).map_or("?", |e| e.id.as_str());
                format!("{prof}->{out}")
            })
            .collect();
        format!("{{{}}}", body.join(","))
    }

    /// Resolves a rule label: an explicit rule name, or `f<n>` under all functions.
    pub fn rule_by_label(&self, label: &str) -> Result<Arc<RuleTable>> {
        match &self.rules {
            RuleUniverse::Explicit(e) => e
                .rules
                .iter()
                .find(|r| r.name() == Some(label))
                .cloned()
                .ok_or_else(|| Error::UnknownRule(label.to_owned())),
            RuleUniverse::AllFunctions => label
                .strip_prefix('f')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .and_then(|n| self.rule_at(n - 1))
                .ok_or_else(|| Error::UnknownRule(label.to_owned())),
        }
    }

    /// Every rule exactly once, in universe order.
    pub fn enumerate_rules(&self, cap: u64) -> Result<RuleIter<'_>> {
        let count = self.rules_within(cap)?;
        Ok(RuleIter { domain: self, next: 0, count })
    }

    /// Every decision exactly once, rule-major.
    pub fn enumerate_decisions(&self, cap: u64) -> Result<impl Iterator<Item = Decision> + '_> {
        self.decisions_within(cap)?;
        let profiles = self.profiles.len();
        Ok(self.enumerate_rules(cap)?.flat_map(move |rule| {
            (0..profiles).map(move |x| Decision {
                profile: ProfileId(x),
                outcome: rule.map[x],
                rule: Arc::clone(&rule),
            })
        }))
    }

    /// Position of `decision` in [`enumerate_decisions`](Self::enumerate_decisions) order.
    pub fn decision_index(&self, decision: &Decision) -> Result<usize> {
        self.check_profile(decision.profile)?;
        let r = self
            .rule_index(&decision.rule)
            .ok_or_else(|| Error::UnknownRule(self.rule_label(&decision.rule)))?;
        r.checked_mul(self.profiles.len())
            .and_then(|v| v.checked_add(decision.profile.0))
            .ok_or(Error::CapExceeded {
                what: "decision index",
                count: Cardinality::Astronomical,
                cap: u64::MAX,
            })
    }

    /// Decision at position `index`.
    pub fn decision_at(&self, index: usize) -> Option<Decision> {
        let n = self.profiles.len();
        let rule = self.rule_at(index / n)?;
        let profile = ProfileId(index % n);
        Some(Decision { profile, outcome: rule.map[profile.0], rule })
    }

    /// Profile, rule and outcome labels of a decision.
    pub fn decision_labels(&self, decision: &Decision) -> [String; 3] {
        [
            self.profile_label(decision.profile).to_owned(),
            self.rule_label(&decision.rule),
            self.outcome_label(decision.outcome).to_owned(),
        ]
    }

    /// Constant rule `x -> y`.
    pub fn constant_rule(&self, outcome: OutcomeId) -> Result<Arc<RuleTable>> {
        self.check_outcome(outcome)?;
        let rule = RuleTable::named(
            format!("const({})", self.outcome_label(outcome)),
            vec![outcome; self.profiles.len()],
        );
        self.check_rule(&rule)?;
        Ok(Arc::new(rule))
    }
}

pub struct RuleIter<'a> {
    domain: &'a DecisionDomain,
    next: usize,
    count: usize,
}

impl Iterator for RuleIter<'_> {
    type Item = Arc<RuleTable>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.count {
            return None;
        }
        let rule = self.domain.rule_at(self.next);
        self.next += 1;
        rule
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.count - self.next;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for RuleIter<'_> {}

impl fmt::Display for ProfileId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x#{}", self.0)
    }
}

impl fmt::Display for OutcomeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y#{}", self.0)
    }
}

/// `x1..xN`, `y1..yM` with every function as the rule universe.
pub fn numbered_domain(profiles: usize, outcomes: usize) -> Result<DecisionDomain> {
    Ok(DecisionDomain::all_functions(
        LabelSpace::from_labels((1..=profiles).map(|i| format!("x{i}")))?,
        LabelSpace::from_labels((1..=outcomes).map(|i| format!("y{i}")))?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1() -> DecisionDomain {
        numbered_domain(2, 2).unwrap()
    }

    fn rule(d: &DecisionDomain, name: &str) -> Arc<RuleTable> {
        d.rule_by_label(name).unwrap()
    }

    #[test]
    fn apply_matches_function_table() {
        let d = ex1();
        let (x1, x2) = (d.profile("x1").unwrap(), d.profile("x2").unwrap());
        let y1 = d.outcome("y1").unwrap();
        assert_eq!(d.apply(&rule(&d, "f2"), x1).unwrap(), y1);
        assert_eq!(d.apply(&rule(&d, "f1"), x2).unwrap(), y1);
        let c = d.outcome("y2").unwrap();
        let constant = d.constant_rule(c).unwrap();
        for x in d.profile_ids() {
            assert_eq!(d.apply(&constant, x).unwrap(), c);
        }
    }

    #[test]
    fn apply_rejects_unknown_profile() {
        let d = ex1();
        let err = d.apply(&rule(&d, "f1"), ProfileId(2)).unwrap_err();
        assert_eq!(err.code(), "unknown-profile");
        assert_eq!(d.profile("x3").unwrap_err().code(), "unknown-profile");
    }

    #[test]
    fn make_decision_forces_outcome() {
        let d = ex1();
        let dec = d.make_decision(d.profile("x1").unwrap(), &rule(&d, "f1")).unwrap();
        assert_eq!(d.decision_labels(&dec), ["x1", "f1", "y1"]);
        let dec = d.make_decision(d.profile("x2").unwrap(), &rule(&d, "f4")).unwrap();
        assert_eq!(d.decision_labels(&dec), ["x2", "f4", "y2"]);
    }

    #[test]
    fn identity_rule_decision() {
        let labels = ["a", "b", "c"];
        let d = DecisionDomain::all_functions(
            LabelSpace::from_labels(labels).unwrap(),
            LabelSpace::from_labels(labels).unwrap(),
        );
        let id = Arc::new(RuleTable::named("id", (0..3).map(OutcomeId).collect()));
        for x in d.profile_ids() {
            let dec = d.make_decision(x, &id).unwrap();
            assert_eq!(dec.outcome().0, x.0);
        }
    }

    #[test]
    fn is_decision_checks_image() {
        let d = ex1();
        let (x1, f1) = (d.profile("x1").unwrap(), rule(&d, "f1"));
        assert!(d.is_decision(x1, &f1, d.outcome("y1").unwrap()).unwrap());
        assert!(!d.is_decision(x1, &f1, d.outcome("y2").unwrap()).unwrap());
        assert_eq!(d.is_decision(x1, &f1, OutcomeId(9)).unwrap_err().code(), "unknown-outcome");
    }

    #[test]
    fn enumerate_rules_matches_example_table() {
        let d = ex1();
        let rules: Vec<_> = d.enumerate_rules(DEFAULT_CAP).unwrap().collect();
        let maps: Vec<Vec<usize>> =
            rules.iter().map(|r| r.outcomes().iter().map(|y| y.0).collect()).collect();
        assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let names: Vec<_> = rules.iter().map(|r| r.name().unwrap().to_owned()).collect();
        assert_eq!(names, ["f1", "f2", "f3", "f4"]);
    }

    #[test]
    fn rule_counts() {
        assert_eq!(numbered_domain(1, 3).unwrap().enumerate_rules(DEFAULT_CAP).unwrap().count(), 3);
        assert_eq!(numbered_domain(3, 3).unwrap().enumerate_rules(DEFAULT_CAP).unwrap().count(), 27);
    }

    #[test]
    fn enumeration_cap_reports_exact_count() {
        let d = numbered_domain(3, 3).unwrap();
        match d.enumerate_rules(26) {
            Err(Error::CapExceeded { count, cap, .. }) => {
                assert_eq!(count, Cardinality::Finite(27));
                assert_eq!(cap, 26);
            }
            other => panic!("expected cap error, got {:?}", other.map(|_| ())),
        }
        let huge = numbered_domain(216, 3).unwrap();
        assert_eq!(huge.rule_count(), Cardinality::Astronomical);
        assert!(matches!(
            huge.enumerate_rules(DEFAULT_CAP),
            Err(Error::CapExceeded { count: Cardinality::Astronomical, .. })
        ));
    }

    #[test]
    fn decisions_enumerate_and_validate() {
        let d = ex1();
        let all: Vec<_> = d.enumerate_decisions(DEFAULT_CAP).unwrap().collect();
        assert_eq!(all.len(), 8);
        for (i, dec) in all.iter().enumerate() {
            assert!(d.is_decision(dec.profile(), dec.rule(), dec.outcome()).unwrap());
            assert_eq!(d.decision_index(dec).unwrap(), i);
            assert_eq!(d.decision_at(i).as_ref(), Some(dec));
        }
        assert_eq!(numbered_domain(1, 2).unwrap().enumerate_decisions(DEFAULT_CAP).unwrap().count(), 2);
    }

    #[test]
    fn explicit_universe_rejects_duplicates_and_foreign_rules() {
        let p = LabelSpace::from_labels(["x1", "x2"]).unwrap();
        let o = LabelSpace::from_labels(["y1", "y2"]).unwrap();
        let a = RuleTable::named("a", vec![OutcomeId(0), OutcomeId(1)]);
        let b = RuleTable::named("b", vec![OutcomeId(0), OutcomeId(1)]);
        let err = DecisionDomain::explicit(p.clone(), o.clone(), vec![a.clone(), b]).unwrap_err();
        assert_eq!(err.code(), "invalid-domain");

        let d = DecisionDomain::explicit(p, o, vec![a]).unwrap();
        let foreign = Arc::new(RuleTable::new(vec![OutcomeId(1), OutcomeId(1)]));
        assert_eq!(d.make_decision(ProfileId(0), &foreign).unwrap_err().code(), "unknown-rule");
        assert_eq!(d.enumerate_decisions(DEFAULT_CAP).unwrap().count(), 2);
    }

    #[test]
    fn rule_equality_ignores_names() {
        let a = RuleTable::named("borda", vec![OutcomeId(0)]);
        let b = RuleTable::named("copeland", vec![OutcomeId(0)]);
        assert_eq!(a, b);
    }

    #[test]
    fn label_space_validation() {
        assert!(LabelSpace::from_labels(Vec::<String>::new()).is_err());
        assert!(LabelSpace::from_labels(["a", "a"]).is_err());
    }
}

use std::sync::Arc;

use serde::Serialize;

use super::blackbox::{procedural_extension, reduce_to_blackbox, BlackboxList};
use crate::axiom::Axiom;
use crate::domain::{ProfileId, RuleTable};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Arrovian {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictMethod {
    /// Every rule in the universe was checked.
    RuleEnumeration,
    /// The axiom reads only `(x, y)`, so it is Arrovian iff it has an impasse.
    BlackboxShortcut,
    /// A rule obeying the axiom at every profile was exhibited.
    WitnessRule,
    /// An impasse was found, which already rules out every rule.
    Impasse,
    /// No sound route applied.
    Undecided,
}

#[derive(Clone, Debug)]
pub struct ImpossibilityVerdict {
    pub arrovian: Arrovian,
    /// `None` when the blackbox reduction itself is out of reach.
    pub impasses: Option<Vec<ProfileId>>,
    pub method: VerdictMethod,
    pub witness_rule: Option<Arc<RuleTable>>,
}

/// Profiles `x` with `A(x, f, f(x)) = 0` for every `f`, i.e. empty slices of the reduction.
pub fn find_impasses(axiom: &Axiom, cap: u64) -> Result<Vec<ProfileId>> {
    Ok(reduce_to_blackbox(axiom, cap)?.impasses())
}

/// Profiles where deciding with `rule` violates the axiom.
pub fn violations(axiom: &Axiom, rule: &Arc<RuleTable>) -> Result<Vec<ProfileId>> {
    let domain = axiom.domain();
    let mut out = Vec::new();
    for x in domain.profile_ids() {
        if !axiom.evaluate(&domain.make_decision(x, rule)?)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// `A(x, f, f(x)) = 1` at every profile.
pub fn obeys_everywhere(axiom: &Axiom, rule: &Arc<RuleTable>) -> Result<bool> {
    let domain = axiom.domain();
    for x in domain.profile_ids() {
        if !axiom.evaluate(&domain.make_decision(x, rule)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn optional_reduction(axiom: &Axiom, cap: u64) -> Result<Option<BlackboxList>> {
    match reduce_to_blackbox(axiom, cap) {
        Ok(b) => Ok(Some(b)),
        Err(Error::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn is_arrovian(axiom: &Axiom, cap: u64) -> Result<ImpossibilityVerdict> {
    is_arrovian_with(axiom, cap, &[])
}

/// Decides whether no rule obeys the axiom at every profile.
///
/// Routes, in order: exhaustive rule enumeration when the decision space fits
/// under `cap`; an impasse in the reduction; the blackbox shortcut for axioms
/// declared to read only `(x, y)`; a search over `candidates` plus the members
/// of the procedural extension when those can be listed. If none applies the
/// verdict is `Unknown`.
pub fn is_arrovian_with(axiom: &Axiom, cap: u64, candidates: &[Arc<RuleTable>]) -> Result<ImpossibilityVerdict> {
    let domain = axiom.domain();
    let reduction = optional_reduction(axiom, cap)?;
    let impasses = reduction.as_ref().map(BlackboxList::impasses);

    if let (Ok(rules), Ok(_)) = (domain.rules_within(cap), domain.decisions_within(cap)) {
        let bits = axiom.truth_table(cap)?;
        let n = domain.profile_count();
        let witness = (0..rules).find(|&r| (0..n).all(|x| bits.get(r * n + x)));
        return Ok(ImpossibilityVerdict {
            arrovian: if witness.is_some() { Arrovian::No } else { Arrovian::Yes },
            impasses,
            method: VerdictMethod::RuleEnumeration,
            witness_rule: witness.and_then(|r| domain.rule_at(r)),
        });
    }

    if impasses.as_ref().is_some_and(|i| !i.is_empty()) {
        return Ok(ImpossibilityVerdict { arrovian: Arrovian::Yes, impasses, method: VerdictMethod::Impasse, witness_rule: None });
    }

    if let Some(b) = &reduction {
        if axiom.requirements().is_some_and(|r| r.covered_by(true, false, true)) {
            // Implementable blackbox: any rule picking from every slice obeys it.
            let map = domain.profile_ids().map(|x| b.slice(x)[0]).collect();
            let rule = Arc::new(RuleTable::named(format!("pick({})", axiom.name()), map));
            if !obeys_everywhere(axiom, &rule)? {
                return Err(Error::WitnessVerification(format!(
                    "axiom `{}` is declared blackbox but a rule inside its reduction violates it",
                    axiom.name()
                )));
            }
            return Ok(ImpossibilityVerdict {
                arrovian: Arrovian::No,
                impasses,
                method: VerdictMethod::BlackboxShortcut,
                witness_rule: Some(rule),
            });
        }
    }

    let mut pool: Vec<Arc<RuleTable>> = candidates.to_vec();
    if let Some(b) = &reduction {
        if let Ok(members) = procedural_extension(b).rules(cap) {
            pool.extend(members);
        }
    }
    for rule in pool {
        if domain.check_rule(&rule).is_ok() && obeys_everywhere(axiom, &rule)? {
            return Ok(ImpossibilityVerdict {
                arrovian: Arrovian::No,
                impasses,
                method: VerdictMethod::WitnessRule,
                witness_rule: Some(rule),
            });
        }
    }
    Ok(ImpossibilityVerdict { arrovian: Arrovian::Unknown, impasses, method: VerdictMethod::Undecided, witness_rule: None })
}

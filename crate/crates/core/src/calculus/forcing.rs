use std::sync::Arc;

use rayon::prelude::*;

use super::blackbox::{name_rule, procedural_extension, reduce_to_blackbox, BlackboxList};
use super::impossibility::violations;
use crate::axiom::Axiom;
use crate::domain::{OutcomeId, ProfileId, RuleTable};
use crate::error::{Cardinality, Error, Result};

/// Every slice of the reduction is a singleton (which implies implementability).
pub fn is_forcing(axiom: &Axiom, cap: u64) -> Result<bool> {
    Ok(reduce_to_blackbox(axiom, cap)?.is_forcing())
}

pub fn forced_outcome(axiom: &Axiom, profile: ProfileId, cap: u64) -> Result<OutcomeId> {
    reduce_to_blackbox(axiom, cap)?.forced_outcome(profile)
}

/// The rule `x -> forced outcome` of a forcing blackbox list.
pub fn implied_rule_of(blackbox: &BlackboxList, name: &str) -> Result<Arc<RuleTable>> {
    let domain = blackbox.domain();
    let map = domain.profile_ids().map(|x| blackbox.forced_outcome(x)).collect::<Result<Vec<_>>>()?;
    let table = RuleTable::new(map);
    match domain.check_rule(&table) {
        Ok(()) => {}
        Err(Error::UnknownRule(_)) => return Err(Error::RuleOutsideUniverse),
        Err(e) => return Err(e),
    }
    let named = name_rule(domain, table);
    Ok(if named.name().is_some() { named } else { Arc::new((*named).clone().with_name(format!("implied({name})"))) })
}

/// The rule a forcing axiom implies.
pub fn implied_rule(axiom: &Axiom, cap: u64) -> Result<Arc<RuleTable>> {
    implied_rule_of(&reduce_to_blackbox(axiom, cap)?, axiom.name())
}

#[derive(Clone, Debug)]
pub struct ParadoxReport {
    pub axiom: String,
    pub implied_rule: Arc<RuleTable>,
    /// Profiles where deciding with the implied rule violates the axiom.
    pub violating_profiles: Vec<ProfileId>,
    pub paradox: bool,
}

/// Evaluates the axiom on `(x, f, f(x))` for its implied rule `f` at every profile.
pub fn detect_paradox(axiom: &Axiom, cap: u64) -> Result<ParadoxReport> {
    let rule = implied_rule(axiom, cap)?;
    let domain = axiom.domain();
    let flags: Vec<bool> = domain
        .profile_ids()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|x| axiom.evaluate(&domain.make_decision(x, &rule)?))
        .collect::<Result<_>>()?;
    let violating: Vec<ProfileId> =
        flags.iter().enumerate().filter(|(_, ok)| !**ok).map(|(x, _)| ProfileId(x)).collect();
    Ok(ParadoxReport {
        axiom: axiom.name().to_owned(),
        implied_rule: rule,
        paradox: !violating.is_empty(),
        violating_profiles: violating,
    })
}

#[derive(Clone, Debug)]
pub struct GeneralParadoxReport {
    pub axiom: String,
    pub implementable: bool,
    pub extension_size: Cardinality,
    /// Each extension member with the profiles where it violates the axiom.
    pub rules: Vec<(Arc<RuleTable>, Vec<ProfileId>)>,
    /// Implementable, and every member of the procedural extension violates somewhere.
    pub paradox: bool,
}

/// Paradox check for implementable axioms that need not be forcing.
pub fn detect_general_paradox(axiom: &Axiom, cap: u64) -> Result<GeneralParadoxReport> {
    let b = reduce_to_blackbox(axiom, cap)?;
    let ext = procedural_extension(&b);
    let implementable = b.is_implementable();
    let mut rules = Vec::new();
    if implementable {
        for rule in ext.rules(cap)? {
            let v = violations(axiom, &rule)?;
            rules.push((rule, v));
        }
    }
    let paradox = implementable && !rules.is_empty() && rules.iter().all(|(_, v)| !v.is_empty());
    Ok(GeneralParadoxReport {
        axiom: axiom.name().to_owned(),
        implementable,
        extension_size: ext.count(),
        rules,
        paradox,
    })
}

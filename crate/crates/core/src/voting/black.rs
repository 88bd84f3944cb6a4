//! The axiom "use Copeland when a Condorcet winner exists, otherwise Borda".

use std::sync::Arc;

use serde::Serialize;

use super::ranking::{candidate_names, PreferenceProfile, Ranking};
use super::rules::{borda, condorcet_winner, copeland};
use super::{OrderKind, OutcomeMode, RuleFamily, VotingDomain, VotingRule};
use crate::axiom::{Axiom, InfoRequirements};
use crate::error::{Error, Result};

/// Obeyed at `(x, f, y)` iff `f` is Copeland's rule (as a whole table) when
/// `x` has a Condorcet winner, and Borda's rule otherwise.
///
/// The axiom reads the profile and the rule. Its declared reduction pairs
/// each profile with the outcome of the branch rule, witnessed by that rule.
pub fn black_axiom(vd: &VotingDomain) -> Result<Axiom> {
    if vd.config().outcome_mode != OutcomeMode::Winner || vd.config().order_kind != OrderKind::Linear {
        return Err(Error::InvalidParameter("black's axiom requires winner mode over linear orders".into()));
    }
    let copeland_table = vd.rule(&RuleFamily::Winner { rule: VotingRule::Copeland })?;
    let borda_table = vd.rule(&RuleFamily::Winner { rule: VotingRule::Borda })?;
    let has_winner: Arc<Vec<bool>> = Arc::new(vd.profiles().iter().map(|p| condorcet_winner(p).is_some()).collect());

    let (c, b, w) = (Arc::clone(&copeland_table), Arc::clone(&borda_table), Arc::clone(&has_winner));
    let axiom = Axiom::intensional("black", Arc::clone(vd.domain()), move |d| {
        let branch = if w[d.profile().0] { &c } else { &b };
        Arc::ptr_eq(d.rule(), branch) || d.rule().same_function(branch)
    })
    .requiring(InfoRequirements::new(true, true, false));

    Ok(axiom.with_reduction(move |x| {
        let branch = if has_winner[x.0] { &copeland_table } else { &borda_table };
        vec![(branch.outcomes()[x.0], Arc::clone(branch))]
    }))
}

/// Profiles showing that Black's rule coincides with neither Copeland nor Borda as a function.
#[derive(Clone, Debug, Serialize)]
pub struct BlackWitnesses {
    pub candidates: usize,
    pub voters: usize,
    /// No Condorcet winner, and the Borda and Copeland winners differ.
    pub borda_ne_copeland: String,
    /// A Condorcet winner that is not the Borda winner.
    pub condorcet_ne_borda: String,
}

impl BlackWitnesses {
    pub fn profiles(&self) -> Result<(PreferenceProfile, PreferenceProfile)> {
        let names = candidate_names(self.candidates);
        let parse = |label: &str| -> Result<PreferenceProfile> {
            let ballots = label.split(';').map(|b| Ranking::parse(b, &names)).collect::<Result<_>>()?;
            PreferenceProfile::new(names.clone(), ballots)
        };
        Ok((parse(&self.borda_ne_copeland)?, parse(&self.condorcet_ne_borda)?))
    }
}

/// Smallest voter count up to `max_voters` at which both witness profiles
/// exist among linear profiles; the first of each in profile order.
pub fn search_black_witnesses(candidates: usize, max_voters: usize, cap: u64) -> Result<Option<BlackWitnesses>> {
    for voters in 1..=max_voters {
        let vd = VotingDomain::new(super::VotingDomainConfig::winner(candidates, voters), cap)?;
        let first_no_cw = vd
            .profiles()
            .iter()
            .find(|p| condorcet_winner(p).is_none() && borda(p) != copeland(p));
        let first_cw = vd
            .profiles()
            .iter()
            .find(|p| condorcet_winner(p).is_some_and(|c| c != borda(p)));
        if let (Some(a), Some(b)) = (first_no_cw, first_cw) {
            return Ok(Some(BlackWitnesses {
                candidates,
                voters,
                borda_ne_copeland: a.label(),
                condorcet_ne_borda: b.label(),
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{detect_paradox, implied_rule, is_forcing};
    use crate::domain::DEFAULT_CAP;
    use crate::taxonomy::{classify_with_pool, AxiomClass, ExigentKind};
    use crate::voting::VotingDomainConfig;

    fn domain(voters: usize) -> VotingDomain {
        VotingDomain::new(VotingDomainConfig::winner(3, voters), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn implied_rule_is_blacks_rule() {
        let vd = domain(3);
        let a = black_axiom(&vd).unwrap();
        assert!(is_forcing(&a, DEFAULT_CAP).unwrap());
        let f = implied_rule(&a, DEFAULT_CAP).unwrap();
        let black = vd.rule(&RuleFamily::Winner { rule: VotingRule::Black }).unwrap();
        assert!(f.same_function(&black));
    }

    #[test]
    fn witnesses_are_found_and_valid() {
        let w = search_black_witnesses(3, 5, DEFAULT_CAP).unwrap().expect("witnesses within 5 voters");
        let (p, q) = w.profiles().unwrap();
        assert!(condorcet_winner(&p).is_none() && borda(&p) != copeland(&p));
        assert!(condorcet_winner(&q).is_some_and(|c| c != borda(&q)));
        let smaller = search_black_witnesses(3, w.voters - 1, DEFAULT_CAP).unwrap();
        assert!(smaller.is_none());
    }

    #[test]
    fn paradox_everywhere_at_witness_size() {
        let w = search_black_witnesses(3, 5, DEFAULT_CAP).unwrap().unwrap();
        let vd = domain(w.voters);
        let r = detect_paradox(&black_axiom(&vd).unwrap(), DEFAULT_CAP).unwrap();
        assert!(r.paradox);
        assert_eq!(r.violating_profiles.len(), vd.domain().profile_count());
    }

    #[test]
    fn classified_exigent_through_witnesses() {
        let vd = domain(3);
        let a = black_axiom(&vd).unwrap();
        let mut pool: Vec<_> =
            VotingRule::ALL.iter().map(|&rule| vd.rule(&RuleFamily::Winner { rule }).unwrap()).collect();
        for y in vd.domain().outcome_ids() {
            pool.push(vd.domain().constant_rule(y).unwrap());
        }
        let cs = classify_with_pool(&a, &pool, DEFAULT_CAP).unwrap();
        assert_eq!(cs.classes().collect::<Vec<_>>(), vec![AxiomClass::Exigent]);
        assert_eq!(cs.exigent_kind(), Some(ExigentKind::Reducible));
    }

    #[test]
    fn social_order_domain_is_rejected() {
        let vd = VotingDomain::new(VotingDomainConfig::ARROW_MICRO, DEFAULT_CAP).unwrap();
        assert!(black_axiom(&vd).is_err());
    }
}

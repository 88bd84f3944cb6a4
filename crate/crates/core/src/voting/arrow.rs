//! Weak Pareto, independence of irrelevant alternatives and non-dictatorship
//! over a social-order voting domain.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{OutcomeMode, Ranking, VotingDomain};
use crate::axiom::{Axiom, InfoRequirements};
use crate::domain::{OutcomeId, ProfileId, RuleTable};
use crate::error::{Error, Result};

fn social_orders(vd: &VotingDomain) -> Result<Arc<Vec<Ranking>>> {
    if vd.config().outcome_mode != OutcomeMode::SocialOrder {
        return Err(Error::InvalidParameter("arrow axioms require social-order mode".into()));
    }
    Ok(Arc::new(vd.domain().outcome_ids().map(|y| vd.social_order(y).expect("order outcome").clone()).collect()))
}

fn pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect()
}

/// Ordered pairs `(a, b)` every voter strictly ranks `a` over `b`, per profile.
fn unanimous(vd: &VotingDomain) -> Vec<Vec<(usize, usize)>> {
    let m = vd.config().candidates;
    vd.profiles()
        .iter()
        .map(|p| {
            (0..m)
                .flat_map(|a| (0..m).map(move |b| (a, b)))
                .filter(|&(a, b)| a != b && p.ballots().iter().all(|r| r.prefers(a, b)))
                .collect()
        })
        .collect()
}

/// First unanimous preference `(a, b)` at `x` that the outcome `y` fails to rank strictly.
pub fn pareto_violation(vd: &VotingDomain, x: ProfileId, y: OutcomeId) -> Option<(usize, usize)> {
    let order = vd.social_order(y)?;
    let p = vd.profile(x);
    let m = vd.config().candidates;
    (0..m)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .find(|&(a, b)| a != b && p.ballots().iter().all(|r| r.prefers(a, b)) && !order.prefers(a, b))
}

/// Weak Pareto: if every voter strictly prefers `a` to `b`, so does the outcome.
/// Depends on the profile and outcome only.
pub fn weak_pareto(vd: &VotingDomain) -> Result<Axiom> {
    let orders = social_orders(vd)?;
    let unanimous = Arc::new(unanimous(vd));
    Ok(Axiom::intensional("weak-pareto", Arc::clone(vd.domain()), move |d| {
        let order = &orders[d.outcome().0];
        unanimous[d.profile().0].iter().all(|&(a, b)| order.prefers(a, b))
    })
    .requiring(InfoRequirements::new(true, false, true)))
}

/// Two profiles with identical individual comparisons of `{a, b}` whose
/// outcomes compare `a` and `b` differently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IiaViolation {
    pub first: ProfileId,
    pub second: ProfileId,
    pub pair: (usize, usize),
}

struct IiaData {
    /// Per pair `(a, b)`, the group of each profile by its voters' `{a, b}` comparisons.
    groups: Vec<((usize, usize), Vec<usize>)>,
    orders: Arc<Vec<Ranking>>,
}

impl IiaData {
    fn new(vd: &VotingDomain, orders: Arc<Vec<Ranking>>) -> Self {
        let groups = pairs(vd.config().candidates)
            .into_iter()
            .map(|(a, b)| {
                let mut keys: HashMap<Vec<i8>, usize> = HashMap::new();
                let group = vd
                    .profiles()
                    .iter()
                    .map(|p| {
                        let key: Vec<i8> = p.ballots().iter().map(|r| r.compare(a, b)).collect();
                        let next = keys.len();
                        *keys.entry(key).or_insert(next)
                    })
                    .collect();
                ((a, b), group)
            })
            .collect();
        IiaData { groups, orders }
    }

    fn violation(&self, rule: &RuleTable) -> Option<IiaViolation> {
        let map = rule.outcomes();
        for ((a, b), group) in &self.groups {
            let mut first: HashMap<usize, usize> = HashMap::new();
            for (x, &g) in group.iter().enumerate() {
                let here = self.orders[map[x].0].compare(*a, *b);
                match first.get(&g) {
                    None => {
                        first.insert(g, x);
                    }
                    Some(&x0) if self.orders[map[x0].0].compare(*a, *b) != here => {
                        return Some(IiaViolation { first: ProfileId(x0), second: ProfileId(x), pair: (*a, *b) });
                    }
                    Some(_) => {}
                }
            }
        }
        None
    }
}

/// A pair of profiles witnessing that `rule` is not independent of irrelevant alternatives.
pub fn iia_violation(vd: &VotingDomain, rule: &RuleTable) -> Result<Option<IiaViolation>> {
    vd.domain().check_rule(rule)?;
    Ok(IiaData::new(vd, social_orders(vd)?).violation(rule))
}

/// Independence of irrelevant alternatives, a property of the whole rule.
pub fn independence(vd: &VotingDomain) -> Result<Axiom> {
    let data = Arc::new(IiaData::new(vd, social_orders(vd)?));
    Ok(Axiom::intensional("iia", Arc::clone(vd.domain()), move |d| data.violation(d.rule()).is_none())
        .requiring(InfoRequirements::new(false, true, false)))
}

fn dictator(vd: &VotingDomain, orders: &[Ranking], rule: &RuleTable) -> Option<usize> {
    let m = vd.config().candidates;
    (0..vd.config().voters).find(|&i| {
        vd.profiles().iter().zip(rule.outcomes()).all(|(p, y)| {
            let ballot = &p.ballots()[i];
            let social = &orders[y.0];
            (0..m).all(|a| (0..m).all(|b| !ballot.prefers(a, b) || social.prefers(a, b)))
        })
    })
}

/// The first voter (0-based) whose strict preferences the rule always reproduces.
pub fn dictator_of(vd: &VotingDomain, rule: &RuleTable) -> Result<Option<usize>> {
    vd.domain().check_rule(rule)?;
    Ok(dictator(vd, &social_orders(vd)?, rule))
}

/// Non-dictatorship: no voter's strict preferences are always reproduced.
pub fn non_dictatorship(vd: &VotingDomain) -> Result<Axiom> {
    let orders = social_orders(vd)?;
    let vd2 = vd.clone();
    Ok(Axiom::intensional("non-dictatorship", Arc::clone(vd.domain()), move |d| {
        dictator(&vd2, &orders, d.rule()).is_none()
    })
    .requiring(InfoRequirements::new(false, true, false)))
}

/// `(weak Pareto, IIA, non-dictatorship)`.
pub fn arrow_axioms(vd: &VotingDomain) -> Result<(Axiom, Axiom, Axiom)> {
    Ok((weak_pareto(vd)?, independence(vd)?, non_dictatorship(vd)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::DEFAULT_CAP;
    use crate::taxonomy::{classify_with_pool, AxiomClass};
    use crate::voting::{RuleFamily, VotingDomainConfig, VotingRule};

    fn micro() -> VotingDomain {
        VotingDomain::new(VotingDomainConfig::ARROW_MICRO, DEFAULT_CAP).unwrap()
    }

    fn everywhere(a: &Axiom, f: &Arc<RuleTable>) -> bool {
        crate::calculus::obeys_everywhere(a, f).unwrap()
    }

    #[test]
    fn dictatorships_pass_pareto_and_iia() {
        let vd = micro();
        let (p, i, d) = arrow_axioms(&vd).unwrap();
        for voter in 1..=2 {
            let f = vd.rule(&RuleFamily::Dictatorship { voter }).unwrap();
            assert!(everywhere(&p, &f));
            assert!(everywhere(&i, &f));
            assert!(!everywhere(&d, &f));
            assert_eq!(dictator_of(&vd, &f).unwrap(), Some(voter - 1));
        }
    }

    #[test]
    fn constant_rule_passes_iia_and_fails_pareto() {
        let vd = micro();
        let (p, i, d) = arrow_axioms(&vd).unwrap();
        let f = vd.rule(&RuleFamily::Constant { outcome: "a>b>c".into() }).unwrap();
        assert!(everywhere(&i, &f));
        assert!(everywhere(&d, &f));
        let x = vd.domain().profile("c>b>a;c>b>a").unwrap();
        assert!(!p.evaluate(&vd.domain().make_decision(x, &f).unwrap()).unwrap());
        assert!(pareto_violation(&vd, x, f.outcomes()[x.0]).is_some());
    }

    #[test]
    fn borda_order_is_not_independent() {
        let vd = micro();
        let f = vd.rule(&RuleFamily::Order { rule: VotingRule::Borda }).unwrap();
        let v = iia_violation(&vd, &f).unwrap().unwrap();
        let (a, b) = v.pair;
        let (p1, p2) = (vd.profile(v.first), vd.profile(v.second));
        for (r1, r2) in p1.ballots().iter().zip(p2.ballots()) {
            assert_eq!(r1.compare(a, b), r2.compare(a, b));
        }
        let o1 = vd.social_order(f.outcomes()[v.first.0]).unwrap();
        let o2 = vd.social_order(f.outcomes()[v.second.0]).unwrap();
        assert_ne!(o1.compare(a, b), o2.compare(a, b));
    }

    #[test]
    fn pareto_is_blackbox_on_the_micro_domain() {
        let vd = micro();
        let (p, i, _) = arrow_axioms(&vd).unwrap();
        let mut pool: Vec<Arc<RuleTable>> = (1..=2).map(|v| vd.rule(&RuleFamily::Dictatorship { voter: v }).unwrap()).collect();
        for y in vd.domain().outcome_ids() {
            pool.push(vd.domain().constant_rule(y).unwrap());
        }
        pool.push(vd.rule(&RuleFamily::Order { rule: VotingRule::Borda }).unwrap());
        let cs = classify_with_pool(&p, &pool, DEFAULT_CAP).unwrap();
        assert_eq!(cs.most_specific(), AxiomClass::Blackbox);
        assert!(!cs.holds(AxiomClass::Structural) && !cs.holds(AxiomClass::Consequentialist));
        let ci = classify_with_pool(&i, &pool, DEFAULT_CAP).unwrap();
        assert_eq!(ci.most_specific(), AxiomClass::Procedural);
    }

    #[test]
    fn winner_mode_is_rejected() {
        let vd = VotingDomain::new(VotingDomainConfig::winner(3, 2), DEFAULT_CAP).unwrap();
        assert_eq!(weak_pareto(&vd).unwrap_err().code(), "invalid-parameter");
    }
}

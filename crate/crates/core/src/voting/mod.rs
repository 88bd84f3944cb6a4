//! Voting instantiation: profiles of ballots, single-winner rules, social
//! orders, and the axioms built on them.

mod arrow;
mod black;
mod ranking;
mod rules;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use arrow::{
    arrow_axioms, dictator_of, iia_violation, non_dictatorship, pareto_violation, weak_pareto, independence,
    IiaViolation,
};
pub use black::{black_axiom, search_black_witnesses, BlackWitnesses};
pub use ranking::{candidate_names, parse_profile, BallotSpec, PreferenceProfile, ProfileFile, Ranking};
pub use rules::{
    beats, blacks_rule, borda, borda_scores, condorcet_winner, copeland, copeland_scores, plurality, plurality_scores,
    score_order, VotingRule,
};

use crate::domain::{DecisionDomain, Element, LabelSpace, OutcomeId, ProfileId, RuleTable};
use crate::error::{Cardinality, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutcomeMode {
    /// Outcomes are candidates.
    Winner,
    /// Outcomes are orders of the configured kind.
    SocialOrder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Linear,
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VotingDomainConfig {
    pub candidates: usize,
    pub voters: usize,
    pub outcome_mode: OutcomeMode,
    pub order_kind: OrderKind,
}

impl VotingDomainConfig {
    /// Two voters, three candidates, linear orders, social-order outcomes.
    pub const ARROW_MICRO: VotingDomainConfig = VotingDomainConfig {
        candidates: 3,
        voters: 2,
        outcome_mode: OutcomeMode::SocialOrder,
        order_kind: OrderKind::Linear,
    };

    pub fn winner(candidates: usize, voters: usize) -> Self {
        VotingDomainConfig { candidates, voters, outcome_mode: OutcomeMode::Winner, order_kind: OrderKind::Linear }
    }

    fn validate(&self) -> Result<()> {
        if self.candidates < 2 || self.candidates > 26 {
            return Err(Error::InvalidParameter(format!(
                "candidate count must be between 2 and 26, got {}",
                self.candidates
            )));
        }
        if self.voters == 0 {
            return Err(Error::InvalidParameter("voter count must be at least 1".into()));
        }
        Ok(())
    }
}

/// A named rule over a voting domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum RuleFamily {
    /// Winner-mode rule.
    Winner { rule: VotingRule },
    /// Social-order rule ranking candidates by score; Black's rule has no order form.
    Order { rule: VotingRule },
    /// Output is the ballot (social-order mode) or top choice (winner mode) of voter `voter` (1-based).
    Dictatorship { voter: usize },
    Constant { outcome: String },
    /// `base` everywhere except `at`, where the output is `replacement`.
    Patched { base: Box<RuleFamily>, at: String, replacement: String },
}

impl RuleFamily {
    /// Parses `borda`, `borda-order`, `dictatorship(2)` or `constant(<outcome>)`.
    pub fn parse(text: &str) -> Result<RuleFamily> {
        let text = text.trim();
        if let Some(r) = VotingRule::parse(text) {
            return Ok(RuleFamily::Winner { rule: r });
        }
        if let Some(r) = text.strip_suffix("-order").and_then(VotingRule::parse) {
            return Ok(RuleFamily::Order { rule: r });
        }
        let inner = |prefix: &str| text.strip_prefix(prefix).and_then(|t| t.strip_suffix(')'));
        if let Some(v) = inner("dictatorship(") {
            let voter = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad voter number in `{text}`")))?;
            return Ok(RuleFamily::Dictatorship { voter });
        }
        if let Some(o) = inner("constant(") {
            return Ok(RuleFamily::Constant { outcome: o.trim().to_owned() });
        }
        Err(Error::InvalidParameter(format!("unknown rule family `{text}`")))
    }
}

/// The decision domain of a voting configuration: every profile of ballots of
/// the configured kind, outcomes per the outcome mode, all functions as rules.
#[derive(Clone, Debug)]
pub struct VotingDomain {
    config: VotingDomainConfig,
    names: Vec<String>,
    profiles: Vec<PreferenceProfile>,
    social_orders: Vec<Ranking>,
    domain: Arc<DecisionDomain>,
}

impl VotingDomain {
    /// Builds the domain; fails when the number of profiles exceeds `cap`.
    pub fn new(config: VotingDomainConfig, cap: u64) -> Result<Self> {
        config.validate()?;
        let names = candidate_names(config.candidates);
        let orders = match config.order_kind {
            OrderKind::Linear => Ranking::all_linear(config.candidates),
            OrderKind::Weak => Ranking::all_weak(config.candidates),
        };
        let count = Cardinality::of_power(orders.len(), config.voters);
        let n = count.within(cap).ok_or(Error::CapExceeded { what: "profile space", count, cap })?;
        let mut profiles = Vec::with_capacity(n);
        let mut digits = vec![0usize; config.voters];
        for _ in 0..n {
            let ballots = digits.iter().map(|&d| orders[d].clone()).collect();
            profiles.push(PreferenceProfile::new(names.clone(), ballots)?);
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < orders.len() {
                    break;
                }
                *d = 0;
            }
        }
        let profile_space = LabelSpace::new(
            profiles
                .iter()
                .map(|p| {
                    let ballots: Vec<String> = p.ballots().iter().map(|b| b.render(&names)).collect();
                    Element::with_payload(p.label(), serde_json::json!({ "ballots": ballots }))
                })
                .collect(),
        )?;
        let (outcome_space, social_orders) = match config.outcome_mode {
            OutcomeMode::Winner => (LabelSpace::from_labels(names.iter().cloned())?, Vec::new()),
            OutcomeMode::SocialOrder => {
                (LabelSpace::from_labels(orders.iter().map(|o| o.render(&names)))?, orders)
            }
        };
        let generator = serde_json::json!({ "voting": config });
        let domain = DecisionDomain::all_functions(profile_space, outcome_space).with_generator(generator);
        Ok(VotingDomain { config, names, profiles, social_orders, domain: Arc::new(domain) })
    }

    /// Rebuilds the voting structure of a domain carrying a voting generator.
    pub fn from_domain(domain: &Arc<DecisionDomain>, cap: u64) -> Result<Self> {
        let config: VotingDomainConfig = domain
            .generator()
            .and_then(|g| g.get("voting"))
            .map(|v| serde_json::from_value(v.clone()))
            .transpose()?
            .ok_or_else(|| Error::InvalidDomain("domain has no voting generator".into()))?;
        let mut vd = Self::new(config, cap)?;
        if *vd.domain != **domain {
            return Err(Error::InvalidDomain(
                "domain contents do not match its voting generator".into(),
            ));
        }
        vd.domain = Arc::clone(domain);
        Ok(vd)
    }

    pub fn config(&self) -> &VotingDomainConfig {
        &self.config
    }

    pub fn domain(&self) -> &Arc<DecisionDomain> {
        &self.domain
    }

    pub fn candidate_names(&self) -> &[String] {
        &self.names
    }

    pub fn profiles(&self) -> &[PreferenceProfile] {
        &self.profiles
    }

    pub fn profile(&self, x: ProfileId) -> &PreferenceProfile {
        &self.profiles[x.0]
    }

    pub fn profile_id(&self, profile: &PreferenceProfile) -> Result<ProfileId> {
        if profile.candidates() != self.names.as_slice() {
            return Err(Error::UnknownProfile(format!(
                "profile candidates {:?} differ from the domain's {:?}",
                profile.candidates(),
                self.names
            )));
        }
        self.domain.profile(&profile.label())
    }

    /// The social order an outcome stands for (social-order mode).
    pub fn social_order(&self, y: OutcomeId) -> Option<&Ranking> {
        self.social_orders.get(y.0)
    }

    fn order_outcome(&self, order: &Ranking) -> Result<OutcomeId> {
        self.domain.outcome(&order.render(&self.names))
    }

    fn require(&self, mode: OutcomeMode, what: &str) -> Result<()> {
        if self.config.outcome_mode != mode {
            return Err(Error::InvalidParameter(format!(
                "{what} requires {} mode",
                match mode {
                    OutcomeMode::Winner => "winner",
                    OutcomeMode::SocialOrder => "social-order",
                }
            )));
        }
        Ok(())
    }

    fn table(&self, name: String, f: impl Fn(&PreferenceProfile) -> Result<OutcomeId>) -> Result<Arc<RuleTable>> {
        let map = self.profiles.iter().map(f).collect::<Result<Vec<_>>>()?;
        let rule = RuleTable::named(name, map);
        self.domain.check_rule(&rule)?;
        Ok(Arc::new(rule))
    }

    /// The table of a rule family over every profile of the domain.
    pub fn rule(&self, family: &RuleFamily) -> Result<Arc<RuleTable>> {
        match family {
            RuleFamily::Winner { rule } => {
                self.require(OutcomeMode::Winner, rule.as_str())?;
                self.table(rule.as_str().to_owned(), |p| Ok(OutcomeId(rule.winner(p))))
            }
            RuleFamily::Order { rule } => {
                self.require(OutcomeMode::SocialOrder, "an order rule")?;
                if *rule == VotingRule::Black {
                    return Err(Error::InvalidParameter("black's rule has no social-order form".into()));
                }
                self.table(format!("{}-order", rule.as_str()), |p| {
                    self.order_outcome(&score_order(&rule.scores(p).expect("scored rule")))
                })
            }
            RuleFamily::Dictatorship { voter } => {
                if *voter == 0 || *voter > self.config.voters {
                    return Err(Error::InvalidParameter(format!(
                        "voter must be between 1 and {}, got {voter}",
                        self.config.voters
                    )));
                }
                let i = voter - 1;
                self.table(format!("dictatorship({voter})"), |p| match self.config.outcome_mode {
                    OutcomeMode::SocialOrder => self.order_outcome(&p.ballots()[i]),
                    OutcomeMode::Winner => Ok(OutcomeId(p.ballots()[i].top()[0])),
                })
            }
            RuleFamily::Constant { outcome } => {
                let y = self.domain.outcome(outcome)?;
                self.table(format!("constant({outcome})"), |_| Ok(y))
            }
            RuleFamily::Patched { base, at, replacement } => {
                let base_table = self.rule(base)?;
                let x = self.domain.profile(at)?;
                let y = self.domain.outcome(replacement)?;
                let mut map = base_table.outcomes().to_vec();
                map[x.0] = y;
                let name = format!("patched({} @ {at} := {replacement})", self.domain.rule_label(&base_table));
                let rule = RuleTable::named(name, map);
                self.domain.check_rule(&rule)?;
                Ok(Arc::new(rule))
            }
        }
    }
}

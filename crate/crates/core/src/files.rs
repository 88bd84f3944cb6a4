//! JSON file formats for domains and axioms, and the decision-triple syntax.
//!
//! Domain file:
//!
//! ```json
//! {
//!   "profiles": ["x1", {"id": "x2", "payload": {"note": "any JSON"}}],
//!   "outcomes": ["y1", "y2"],
//!   "rules": "all",
//!   "generator": null
//! }
//! ```
//!
//! `rules` is `"all"` or a list of `{"name": "g", "map": {"x1": "y1", "x2": "y2"}}`.
//!
//! Axiom file, one of:
//!
//! ```json
//! {"kind": "extensional", "name": "L", "obeys": [["x1", "f1", "y1"]]}
//! {"kind": "builtin", "id": "consequentialist", "params": {"outcomes": ["y1"]}}
//! {"kind": "and", "of": [ ... ]}
//! {"kind": "or", "of": [ ... ]}
//! {"kind": "not", "of": { ... }}
//! ```
//!
//! A decision triple is written `x,f,y`; `_` leaves a component unspecified.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::axiom::Axiom;
use crate::bitset::BitSet;
use crate::domain::{Decision, DecisionDomain, Element, LabelSpace, OutcomeId, ProfileId, RuleTable, RuleUniverse};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::voting::{self, RuleFamily, VotingDomain};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Label(String),
    Full(Element),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RulesSpec {
    All(AllTag),
    Explicit(Vec<RuleSpec>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AllTag {
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainFile {
    pub profiles: Vec<ElementSpec>,
    pub outcomes: Vec<ElementSpec>,
    pub rules: RulesSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<serde_json::Value>,
}

fn space(specs: &[ElementSpec]) -> Result<LabelSpace> {
    LabelSpace::new(
        specs
            .iter()
            .map(|s| match s {
                ElementSpec::Label(l) => Element::new(l.clone()),
                ElementSpec::Full(e) => e.clone(),
            })
            .collect(),
    )
}

fn specs(space: &LabelSpace) -> Vec<ElementSpec> {
    space
        .elements()
        .iter()
        .map(|e| if e.payload.is_none() { ElementSpec::Label(e.id.clone()) } else { ElementSpec::Full(e.clone()) })
        .collect()
}

impl DomainFile {
    pub fn build(&self) -> Result<DecisionDomain> {
        let profiles = space(&self.profiles)?;
        let outcomes = space(&self.outcomes)?;
        let domain = match &self.rules {
            RulesSpec::All(_) => DecisionDomain::all_functions(profiles, outcomes),
            RulesSpec::Explicit(rules) => {
                let tables = rules
                    .iter()
                    .map(|r| {
                        let label = r.name.as_deref().unwrap_or("unnamed");
                        let mut map = Vec::with_capacity(profiles.len());
                        for x in profiles.elements() {
                            let y = r.map.get(&x.id).ok_or_else(|| {
                                Error::InvalidDomain(format!("rule `{label}` has no entry for profile `{}`", x.id))
                            })?;
                            let y = outcomes.position(y).ok_or_else(|| Error::UnknownOutcome(y.clone()))?;
                            map.push(OutcomeId(y));
                        }
                        if let Some(extra) = r.map.keys().find(|k| profiles.position(k).is_none()) {
                            return Err(Error::UnknownProfile(extra.clone()));
                        }
                        Ok(match &r.name {
                            Some(n) => RuleTable::named(n.clone(), map),
                            None => RuleTable::new(map),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                DecisionDomain::explicit(profiles, outcomes, tables)?
            }
        };
        Ok(match &self.generator {
            Some(g) => domain.with_generator(g.clone()),
            None => domain,
        })
    }

    pub fn from_domain(domain: &DecisionDomain) -> Self {
        let rules = match domain.universe() {
            RuleUniverse::AllFunctions => RulesSpec::All(AllTag::All),
            RuleUniverse::Explicit(e) => RulesSpec::Explicit(
                e.rules()
                    .iter()
                    .map(|r| RuleSpec {
                        name: r.name().map(str::to_owned),
                        map: domain
                            .profile_ids()
                            .map(|x| {
                                let y = r.get(x).expect("total rule");
                                (domain.profile_label(x).to_owned(), domain.outcome_label(y).to_owned())
                            })
                            .collect(),
                    })
                    .collect(),
            ),
        };
        DomainFile {
            profiles: specs(domain.profiles()),
            outcomes: specs(domain.outcomes()),
            rules,
            generator: domain.generator().cloned(),
        }
    }
}

pub fn parse_domain(text: &str) -> Result<DecisionDomain> {
    let file: DomainFile = serde_json::from_str(text)?;
    file.build()
}

pub fn domain_to_json(domain: &DecisionDomain) -> String {
    serde_json::to_string_pretty(&DomainFile::from_domain(domain)).expect("domain file serializes")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", deny_unknown_fields)]
pub enum AxiomSpec {
    Extensional {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        obeys: Vec<[String; 3]>,
    },
    Builtin {
        id: String,
        #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
        params: serde_json::Value,
    },
    And {
        of: Vec<AxiomSpec>,
    },
    Or {
        of: Vec<AxiomSpec>,
    },
    Not {
        of: Box<AxiomSpec>,
    },
}

/// Built-in axiom identifiers accepted in axiom files.
pub const BUILTINS: [&str; 14] = [
    "positively-trivial",
    "negatively-trivial",
    "structural",
    "procedural",
    "consequentialist",
    "blackbox",
    "caudal",
    "list-membership",
    "rule-identity",
    "example1",
    "black",
    "weak-pareto",
    "iia",
    "non-dictatorship",
];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Params {
    #[serde(default)]
    profiles: Vec<String>,
    #[serde(default)]
    rules: Vec<String>,
    #[serde(default)]
    outcomes: Vec<String>,
    #[serde(default)]
    pairs: Vec<[String; 2]>,
    #[serde(default)]
    rule: Option<String>,
}

/// Components of a partially specified decision.
pub type ResolvedPartial = (Option<ProfileId>, Option<Arc<RuleTable>>, Option<OutcomeId>);

/// Resolves labels against a domain, including voting rule families on voting domains.
pub struct Resolver<'a> {
    domain: &'a Arc<DecisionDomain>,
    voting: Option<VotingDomain>,
    cap: u64,
}

impl<'a> Resolver<'a> {
    pub fn new(domain: &'a Arc<DecisionDomain>, cap: u64) -> Self {
        let voting = domain.generator().and_then(|_| VotingDomain::from_domain(domain, cap).ok());
        Resolver { domain, voting, cap }
    }

    pub fn domain(&self) -> &Arc<DecisionDomain> {
        self.domain
    }

    pub fn voting(&self) -> Option<&VotingDomain> {
        self.voting.as_ref()
    }

    fn voting_or_err(&self, what: &str) -> Result<&VotingDomain> {
        self.voting
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter(format!("`{what}` needs a domain built from a voting configuration")))
    }

    pub fn profile(&self, label: &str) -> Result<ProfileId> {
        self.domain.profile(label)
    }

    pub fn outcome(&self, label: &str) -> Result<OutcomeId> {
        self.domain.outcome(label)
    }

    /// A universe label (`f<n>` or explicit name), or a voting rule family.
    pub fn rule(&self, label: &str) -> Result<Arc<RuleTable>> {
        match self.domain.rule_by_label(label) {
            Ok(r) => Ok(r),
            Err(e) => match (&self.voting, RuleFamily::parse(label)) {
                (Some(vd), Ok(family)) => vd.rule(&family),
                _ => Err(e),
            },
        }
    }

    pub fn axiom(&self, spec: &AxiomSpec) -> Result<Axiom> {
        match spec {
            AxiomSpec::Extensional { name, obeys } => {
                let n = self.domain.decisions_within(self.cap)?;
                let mut bits = BitSet::new(n);
                for [x, f, y] in obeys {
                    let d = self.decision(x, f, y)?;
                    bits.set(self.domain.decision_index(&d)?, true);
                }
                Axiom::extensional(name.clone().unwrap_or_else(|| "extensional".into()), Arc::clone(self.domain), bits)
            }
            AxiomSpec::Builtin { id, params } => self.builtin(id, params),
            AxiomSpec::And { of } | AxiomSpec::Or { of } => {
                let parts = of.iter().map(|s| self.axiom(s)).collect::<Result<Vec<_>>>()?;
                let refs: Vec<&Axiom> = parts.iter().collect();
                if matches!(spec, AxiomSpec::And { .. }) {
                    Axiom::and(&refs)
                } else {
                    Axiom::or(&refs)
                }
            }
            AxiomSpec::Not { of } => Ok(self.axiom(of)?.negate()),
        }
    }

    fn decision(&self, x: &str, f: &str, y: &str) -> Result<Decision> {
        let d = self.domain.make_decision(self.profile(x)?, &self.rule(f)?)?;
        let y = self.outcome(y)?;
        if d.outcome() != y {
            return Err(Error::InvalidDecision(format!(
                "`{f}` maps `{x}` to `{}`, not `{}`",
                self.domain.outcome_label(d.outcome()),
                self.domain.outcome_label(y)
            )));
        }
        Ok(d)
    }

    fn builtin(&self, id: &str, params: &serde_json::Value) -> Result<Axiom> {
        let p: Params = if params.is_null() {
            serde_json::from_value(serde_json::json!({}))?
        } else {
            serde_json::from_value(params.clone())?
        };
        let d = Arc::clone(self.domain);
        let profiles = || p.profiles.iter().map(|l| self.profile(l)).collect::<Result<Vec<_>>>();
        let outcomes = || p.outcomes.iter().map(|l| self.outcome(l)).collect::<Result<Vec<_>>>();
        let rules = || p.rules.iter().map(|l| self.rule(l)).collect::<Result<Vec<_>>>();
        let xy_pairs = || {
            p.pairs
                .iter()
                .map(|[x, y]| Ok((self.profile(x)?, self.outcome(y)?)))
                .collect::<Result<Vec<_>>>()
        };
        match id {
            "positively-trivial" => Ok(Axiom::positively_trivial(d)),
            "negatively-trivial" => Ok(Axiom::negatively_trivial(d)),
            "structural" => Axiom::structural(d, &profiles()?),
            "procedural" => Axiom::procedural(d, &rules()?),
            "consequentialist" => Axiom::consequentialist(d, &outcomes()?),
            "blackbox" => Axiom::blackbox(d, &xy_pairs()?),
            "list-membership" => Axiom::list_membership(d, &xy_pairs()?),
            "caudal" => {
                let pairs = p
                    .pairs
                    .iter()
                    .map(|[f, y]| Ok((self.rule(f)?, self.outcome(y)?)))
                    .collect::<Result<Vec<_>>>()?;
                Axiom::caudal(d, &pairs)
            }
            "rule-identity" => {
                let label =
                    p.rule.as_deref().ok_or_else(|| Error::InvalidParameter("rule-identity needs `rule`".into()))?;
                Axiom::rule_identity(d, &self.rule(label)?)
            }
            "example1" => {
                let ex = fixtures::example1_axiom();
                if **ex.domain() != *d {
                    return Err(Error::DomainMismatch("example1 is defined on the 2x2 example domain".into()));
                }
                Ok(Axiom::extensional(ex.name(), d, ex.truth_table(self.cap)?)?)
            }
            "black" => voting::black_axiom(self.voting_or_err(id)?),
            "weak-pareto" => voting::weak_pareto(self.voting_or_err(id)?),
            "iia" => voting::independence(self.voting_or_err(id)?),
            "non-dictatorship" => voting::non_dictatorship(self.voting_or_err(id)?),
            other => Err(Error::InvalidParameter(format!("unknown builtin axiom `{other}`"))),
        }
    }

    /// Resolves a partially specified triple.
    pub fn partial(&self, p: &PartialDecision) -> Result<ResolvedPartial> {
        Ok((
            p.profile.as_deref().map(|l| self.profile(l)).transpose()?,
            p.rule.as_deref().map(|l| self.rule(l)).transpose()?,
            p.outcome.as_deref().map(|l| self.outcome(l)).transpose()?,
        ))
    }

    /// Resolves a fully specified triple into a decision.
    pub fn full(&self, p: &PartialDecision) -> Result<Decision> {
        match (&p.profile, &p.rule, &p.outcome) {
            (Some(x), Some(f), Some(y)) => self.decision(x, f, y),
            (Some(x), Some(f), None) => self.domain.make_decision(self.profile(x)?, &self.rule(f)?),
            _ => Err(Error::InvalidDecision(format!("`{p}` must specify at least the profile and the rule"))),
        }
    }
}

pub fn parse_axiom_spec(text: &str) -> Result<AxiomSpec> {
    Ok(serde_json::from_str(text)?)
}

/// Parses and builds an axiom file against `domain`.
pub fn parse_axiom(text: &str, domain: &Arc<DecisionDomain>, cap: u64) -> Result<Axiom> {
    Resolver::new(domain, cap).axiom(&parse_axiom_spec(text)?)
}

/// The extensional file form of an axiom over an enumerable domain.
pub fn axiom_to_spec(axiom: &Axiom, cap: u64) -> Result<AxiomSpec> {
    let list = axiom.characterizing_list(cap)?;
    let domain = axiom.domain();
    Ok(AxiomSpec::Extensional {
        name: Some(axiom.name().to_owned()),
        obeys: list.decisions().map(|d| domain.decision_labels(d)).collect(),
    })
}

/// A decision triple with optional components.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialDecision {
    pub profile: Option<String>,
    pub rule: Option<String>,
    pub outcome: Option<String>,
}

impl std::fmt::Display for PartialDecision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = |o: &Option<String>| o.clone().unwrap_or_else(|| "_".into());
        write!(f, "{},{},{}", c(&self.profile), c(&self.rule), c(&self.outcome))
    }
}

/// Parses `x,f,y`, optionally parenthesized; `_` marks an unspecified component.
pub fn parse_decision(text: &str) -> Result<PartialDecision> {
    let t = text.trim();
    let t = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
    let parts: Vec<&str> = t.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("decision `{text}` must have exactly three comma-separated components")));
    }
    let mut out = [None, None, None];
    for (slot, part) in out.iter_mut().zip(&parts) {
        if part.is_empty() {
            return Err(Error::Parse(format!("decision `{text}` has an empty component")));
        }
        if *part != "_" {
            *slot = Some((*part).to_owned());
        }
    }
    let [profile, rule, outcome] = out;
    Ok(PartialDecision { profile, rule, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::DEFAULT_CAP;

    fn ex_domain() -> Arc<DecisionDomain> {
        Arc::new(parse_domain(fixtures::EXAMPLE1_DOMAIN_JSON).unwrap())
    }

    #[test]
    fn example_fixture_matches_code() {
        let d = ex_domain();
        assert_eq!(*d, *fixtures::example1_domain());
        let a = parse_axiom(fixtures::EXAMPLE1_AXIOM_JSON, &d, DEFAULT_CAP).unwrap();
        assert_eq!(a.truth_table(DEFAULT_CAP).unwrap(), fixtures::example1_axiom().truth_table(DEFAULT_CAP).unwrap());
    }

    #[test]
    fn explicit_domain_round_trip() {
        let text = r#"{"profiles":["p",{"id":"q","payload":[1,2]}],"outcomes":["u","v"],
            "rules":[{"name":"g","map":{"p":"u","q":"v"}},{"map":{"p":"v","q":"v"}}],"generator":{"k":1}}"#;
        let d = parse_domain(text).unwrap();
        assert_eq!(d.rule_count(), crate::error::Cardinality::Finite(2));
        let again = parse_domain(&domain_to_json(&d)).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn domain_errors() {
        for bad in [
            r#"{"profiles":[],"outcomes":["y"],"rules":"all"}"#,
            r#"{"profiles":["x","x"],"outcomes":["y"],"rules":"all"}"#,
            r#"{"profiles":["x"],"outcomes":["y"],"rules":"some"}"#,
            r#"{"profiles":["x"],"outcomes":["y"],"rules":[{"map":{}}]}"#,
            r#"{"profiles":["x"],"outcomes":["y"],"rules":[{"map":{"x":"z"}}]}"#,
            r#"{"profiles":["x"],"outcomes":["y"],"rules":[{"map":{"x":"y","w":"y"}}]}"#,
            r#"{"profiles":["x"],"outcomes":["y"],"rules":"all","extra":1}"#,
            "not json",
        ] {
            assert!(parse_domain(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn builtins_build() {
        let d = ex_domain();
        for text in [
            r#"{"kind":"builtin","id":"positively-trivial"}"#,
            r#"{"kind":"builtin","id":"structural","params":{"profiles":["x1"]}}"#,
            r#"{"kind":"builtin","id":"procedural","params":{"rules":["f2","f3"]}}"#,
            r#"{"kind":"builtin","id":"consequentialist","params":{"outcomes":["y1"]}}"#,
            r#"{"kind":"builtin","id":"blackbox","params":{"pairs":[["x1","y1"]]}}"#,
            r#"{"kind":"builtin","id":"caudal","params":{"pairs":[["f1","y1"]]}}"#,
            r#"{"kind":"builtin","id":"list-membership","params":{"pairs":[["x1","y1"],["x2","y2"]]}}"#,
            r#"{"kind":"builtin","id":"rule-identity","params":{"rule":"f2"}}"#,
            r#"{"kind":"builtin","id":"example1"}"#,
            r#"{"kind":"not","of":{"kind":"builtin","id":"example1"}}"#,
            r#"{"kind":"and","of":[{"kind":"builtin","id":"example1"},{"kind":"builtin","id":"positively-trivial"}]}"#,
        ] {
            let spec = parse_axiom_spec(text).unwrap();
            let again: AxiomSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
            assert_eq!(again, spec);
            Resolver::new(&d, DEFAULT_CAP).axiom(&spec).unwrap();
        }
        for bad in [
            r#"{"kind":"builtin","id":"nope"}"#,
            r#"{"kind":"builtin","id":"black"}"#,
            r#"{"kind":"builtin","id":"structural","params":{"profiles":["x9"]}}"#,
            r#"{"kind":"builtin","id":"structural","params":{"bogus":1}}"#,
            r#"{"kind":"builtin","id":"rule-identity"}"#,
            r#"{"kind":"extensional","obeys":[["x1","f1","y2"]]}"#,
            r#"{"kind":"and","of":[]}"#,
        ] {
            assert!(parse_axiom(bad, &d, DEFAULT_CAP).is_err(), "{bad}");
        }
    }

    #[test]
    fn axiom_file_round_trip_is_semantic() {
        let d = ex_domain();
        for a in 0..256u64 {
            let ax = Axiom::extensional("a", d.clone(), BitSet::from_word(8, a)).unwrap();
            let text = serde_json::to_string(&axiom_to_spec(&ax, DEFAULT_CAP).unwrap()).unwrap();
            let back = parse_axiom(&text, &d, DEFAULT_CAP).unwrap();
            assert_eq!(back.truth_table(DEFAULT_CAP).unwrap(), ax.truth_table(DEFAULT_CAP).unwrap());
        }
    }

    #[test]
    fn decision_syntax() {
        let p = parse_decision("(x1, f2, _)").unwrap();
        assert_eq!(p, PartialDecision { profile: Some("x1".into()), rule: Some("f2".into()), outcome: None });
        assert_eq!(parse_decision(&p.to_string()).unwrap(), p);
        assert!(parse_decision("x1,f2").is_err());
        assert!(parse_decision("x1,,y1").is_err());
        let dom = ex_domain();
        let r = Resolver::new(&dom, DEFAULT_CAP);
        let d = r.full(&parse_decision("x2,f4,y2").unwrap()).unwrap();
        assert_eq!(d.outcome(), OutcomeId(1));
        assert_eq!(r.full(&parse_decision("x2,f4,y1").unwrap()).unwrap_err().code(), "invalid-decision");
        assert!(r.full(&parse_decision("_,f4,y1").unwrap()).is_err());
    }

    #[test]
    fn voting_labels_resolve() {
        let vd = VotingDomain::new(voting::VotingDomainConfig::winner(3, 2), DEFAULT_CAP).unwrap();
        let text = domain_to_json(vd.domain());
        let d = Arc::new(parse_domain(&text).unwrap());
        let r = Resolver::new(&d, DEFAULT_CAP);
        assert!(r.voting().is_some());
        let borda = r.rule("borda").unwrap();
        assert_eq!(borda.name(), Some("borda"));
        parse_axiom(r#"{"kind":"builtin","id":"black"}"#, &d, DEFAULT_CAP).unwrap();
        parse_axiom(r#"{"kind":"builtin","id":"procedural","params":{"rules":["copeland"]}}"#, &d, DEFAULT_CAP).unwrap();
        let dec = r.full(&parse_decision("a>b>c;c>b>a,dictatorship(2),c").unwrap()).unwrap();
        assert_eq!(dec.outcome(), OutcomeId(2));
    }
}

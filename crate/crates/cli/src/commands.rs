//! Subcommand bodies.

use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use decision_axioms::calculus::{
    detect_general_paradox, detect_paradox, extensionally_equivalent, find_impasses, implied_rule, is_arrovian_with,
    is_forcing, procedural_extension, reduce_to_blackbox,
};
use decision_axioms::census::run_census;
use decision_axioms::deception::{is_deceptive, is_transparent, posthoc_witness, DisclosureMask, Statement};
use decision_axioms::files::{self, parse_axiom, parse_decision, parse_domain, Resolver};
use decision_axioms::voting::{
    black_axiom, condorcet_winner, parse_profile, search_black_witnesses, arrow_axioms, OrderKind, OutcomeMode,
    RuleFamily, VotingDomain, VotingDomainConfig, VotingRule,
};
use decision_axioms::{classify, classify_with_pool, fixtures, Axiom, DecisionDomain, Error, RuleTable};

use crate::reproduce::{reproduce_all, Fixtures};
use crate::report::Inputs;
use crate::{render, usage, AxiomInput, Builtin, Cli, Command, Failure};

pub(crate) struct Done {
    pub value: Value,
    pub ok: bool,
    /// Printed verbatim instead of the report.
    pub raw: Option<String>,
    pub timing: Value,
}

fn done(value: Value) -> Done {
    Done { value, ok: true, raw: None, timing: Value::Null }
}

type Out<T> = std::result::Result<T, Failure>;

fn read(path: &Path, name: &str, inputs: &mut Inputs) -> Out<String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage("io-error", format!("cannot read `{}`: {e}", path.display())))?;
    inputs.add(name, text.as_bytes());
    Ok(text)
}

struct Loaded {
    domain: Arc<DecisionDomain>,
    axiom: Axiom,
    second: Option<Axiom>,
    voting: Option<VotingDomain>,
}

fn load(input: &AxiomInput, cap: u64, inputs: &mut Inputs) -> Out<Loaded> {
    let Some(builtin) = input.builtin else {
        let (Some(dp), Some(ap)) = (&input.domain, &input.axiom) else {
            return Err(usage("missing-input", "give --domain and --axiom, or --builtin"));
        };
        let domain = Arc::new(parse_domain(&read(dp, "domain", inputs)?)?);
        let axiom = parse_axiom(&read(ap, "axiom", inputs)?, &domain, cap)?;
        let voting = Resolver::new(&domain, cap).voting().cloned();
        return Ok(Loaded { domain, axiom, second: None, voting });
    };
    let loaded = match builtin {
        Builtin::Example1 => {
            inputs.add("domain", fixtures::EXAMPLE1_DOMAIN_JSON.as_bytes());
            inputs.add("axiom", fixtures::EXAMPLE1_AXIOM_JSON.as_bytes());
            let domain = Arc::new(parse_domain(fixtures::EXAMPLE1_DOMAIN_JSON)?);
            let axiom = parse_axiom(fixtures::EXAMPLE1_AXIOM_JSON, &domain, cap)?;
            Loaded { domain, axiom, second: None, voting: None }
        }
        Builtin::ListVsRule => {
            let (a1, a2) = fixtures::list_and_rule_axioms();
            let domain = Arc::clone(a1.domain());
            inputs.add("domain", files::domain_to_json(&domain).as_bytes());
            Loaded { domain, axiom: a1, second: Some(a2), voting: None }
        }
        Builtin::ArrowMicro => {
            let vd = VotingDomain::new(VotingDomainConfig::ARROW_MICRO, cap)?;
            let (p, i, d) = arrow_axioms(&vd)?;
            let axiom = Axiom::and(&[&p, &i, &d])?.renamed("arrow");
            voting_loaded(vd, axiom, inputs)
        }
        Builtin::Black3c => {
            let w = search_black_witnesses(3, 5, cap)?
                .ok_or_else(|| Error::InvalidDomain("no witness voter count up to 5".into()))?;
            let vd = VotingDomain::new(VotingDomainConfig::winner(3, w.voters), cap)?;
            let axiom = black_axiom(&vd)?;
            voting_loaded(vd, axiom, inputs)
        }
    };
    inputs.add("builtin", format!("{builtin:?}").as_bytes());
    Ok(loaded)
}

fn voting_loaded(vd: VotingDomain, axiom: Axiom, inputs: &mut Inputs) -> Loaded {
    inputs.add("domain", files::domain_to_json(vd.domain()).as_bytes());
    Loaded { domain: Arc::clone(vd.domain()), axiom, second: None, voting: Some(vd) }
}

/// Named rules of a voting domain used to settle questions past the cap.
fn pool(voting: Option<&VotingDomain>) -> Vec<Arc<RuleTable>> {
    let Some(vd) = voting else { return Vec::new() };
    let mut families: Vec<RuleFamily> = VotingRule::ALL
        .iter()
        .flat_map(|&rule| [RuleFamily::Winner { rule }, RuleFamily::Order { rule }])
        .collect();
    families.extend((1..=vd.config().voters).map(|voter| RuleFamily::Dictatorship { voter }));
    let mut out: Vec<Arc<RuleTable>> = families.iter().filter_map(|f| vd.rule(f).ok()).collect();
    out.extend(vd.domain().outcome_ids().filter_map(|y| vd.domain().constant_rule(y).ok()));
    out
}

pub(crate) fn execute(cli: &Cli, inputs: &mut Inputs) -> Out<Done> {
    let cap = cli.cap;
    match &cli.command {
        Command::Classify(input) => {
            let l = load(input, cap, inputs)?;
            let cs = match classify(&l.axiom, cap) {
                Err(Error::CapExceeded { .. }) if l.voting.is_some() => {
                    classify_with_pool(&l.axiom, &pool(l.voting.as_ref()), cap)?
                }
                other => other?,
            };
            Ok(done(json!({ "axiom": l.axiom.name(), "classification": render::classes(&l.domain, &cs) })))
        }
        Command::Reduce(input) => {
            let l = load(input, cap, inputs)?;
            let b = reduce_to_blackbox(&l.axiom, cap)?;
            Ok(done(json!({ "axiom": l.axiom.name(), "blackbox": render::blackbox(&b) })))
        }
        Command::Extend { input, limit } => {
            let l = load(input, cap, inputs)?;
            let b = reduce_to_blackbox(&l.axiom, cap)?;
            let ext = procedural_extension(&b);
            let count = ext.count();
            let listed = match ext.rules(*limit as u64) {
                Ok(rules) => Some(rules.iter().map(|f| render::rule(&l.domain, f)).collect::<Vec<_>>()),
                Err(Error::CapExceeded { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            Ok(done(json!({
                "axiom": l.axiom.name(),
                "blackbox": render::blackbox(&b),
                "extension_size": count.to_string(),
                "rules": listed,
            })))
        }
        Command::Equiv { input, other } => {
            let l = load(input, cap, inputs)?;
            let second = match (other, l.second) {
                (Some(path), _) => parse_axiom(&read(path, "other", inputs)?, &l.domain, cap)?,
                (None, Some(a)) => a,
                (None, None) => return Err(usage("missing-input", "equiv needs --other or --builtin list-vs-rule")),
            };
            let equivalent = extensionally_equivalent(&l.axiom, &second, cap)?;
            let mut separating = None;
            if let Ok(decisions) = l.domain.enumerate_decisions(cap) {
                for d in decisions {
                    if l.axiom.evaluate(&d)? != second.evaluate(&d)? {
                        separating = Some(json!({
                            "decision": render::decision(&l.domain, &d),
                            "first": l.axiom.evaluate(&d)?,
                            "second": second.evaluate(&d)?,
                        }));
                        break;
                    }
                }
            }
            Ok(done(json!({
                "first": l.axiom.name(),
                "second": second.name(),
                "equivalent": equivalent,
                "first_difference": separating,
            })))
        }
        Command::Impasse(input) => {
            let l = load(input, cap, inputs)?;
            let i = find_impasses(&l.axiom, cap)?;
            Ok(done(json!({ "axiom": l.axiom.name(), "impasses": render::profiles(&l.domain, &i) })))
        }
        Command::Arrovian(input) => {
            let l = load(input, cap, inputs)?;
            let v = is_arrovian_with(&l.axiom, cap, &pool(l.voting.as_ref()))?;
            Ok(done(json!({ "axiom": l.axiom.name(), "verdict": render::verdict(&l.domain, &v) })))
        }
        Command::Forcing(input) => {
            let l = load(input, cap, inputs)?;
            let forcing = is_forcing(&l.axiom, cap)?;
            let b = reduce_to_blackbox(&l.axiom, cap)?;
            let permitted: Map<String, Value> = l
                .domain
                .profile_ids()
                .map(|x| {
                    let ys: Vec<&str> = b.slice(x).into_iter().map(|y| l.domain.outcome_label(y)).collect();
                    (l.domain.profile_label(x).to_owned(), json!(ys))
                })
                .collect();
            Ok(done(json!({ "axiom": l.axiom.name(), "forcing": forcing, "permitted": permitted })))
        }
        Command::ImpliedRule(input) => {
            let l = load(input, cap, inputs)?;
            let f = implied_rule(&l.axiom, cap)?;
            Ok(done(json!({ "axiom": l.axiom.name(), "implied_rule": render::rule(&l.domain, &f) })))
        }
        Command::Paradox { input, general } => {
            let l = load(input, cap, inputs)?;
            if *general {
                let r = detect_general_paradox(&l.axiom, cap)?;
                let rules: Vec<Value> = r
                    .rules
                    .iter()
                    .map(|(f, v)| json!({ "rule": l.domain.rule_label(f), "violating_profiles": render::profiles(&l.domain, v) }))
                    .collect();
                return Ok(done(json!({
                    "axiom": r.axiom,
                    "implementable": r.implementable,
                    "extension_size": r.extension_size.to_string(),
                    "rules": rules,
                    "paradox": r.paradox,
                })));
            }
            let r = detect_paradox(&l.axiom, cap)?;
            Ok(done(json!({
                "axiom": r.axiom,
                "implied_rule": render::rule(&l.domain, &r.implied_rule),
                "violating_profiles": render::profiles(&l.domain, &r.violating_profiles),
                "paradox": r.paradox,
            })))
        }
        Command::Census { x, y } => {
            let r = run_census(*x, *y, cap)?;
            let ok = r.all_passed();
            Ok(Done { ok, ..done(serde_json::to_value(&r).map_err(Error::from)?) })
        }
        Command::Vote { rule, profile } => {
            let p = parse_profile(&read(profile, "profile", inputs)?)?;
            let r = VotingRule::parse(rule).ok_or_else(|| {
                usage("invalid-parameter", format!("unknown rule `{rule}`; expected plurality, borda, copeland or black"))
            })?;
            let names = p.candidates();
            let scores: Option<Map<String, Value>> =
                r.scores(&p).map(|s| names.iter().cloned().zip(s.into_iter().map(Value::from)).collect());
            Ok(done(json!({
                "rule": r.as_str(),
                "winner": names[r.winner(&p)],
                "scores": scores,
                "condorcet_winner": condorcet_winner(&p).map(|c| names[c].clone()),
            })))
        }
        Command::BlackParadox { candidates, voters } => {
            let Some(w) = search_black_witnesses(*candidates, *voters, cap)? else {
                return Ok(Done {
                    ok: false,
                    ..done(json!({ "candidates": candidates, "max_voters": voters, "witnesses": null }))
                });
            };
            let vd = VotingDomain::new(VotingDomainConfig::winner(*candidates, w.voters), cap)?;
            let r = detect_paradox(&black_axiom(&vd)?, cap)?;
            let black = vd.rule(&RuleFamily::Winner { rule: VotingRule::Black })?;
            Ok(done(json!({
                "candidates": candidates,
                "voters": w.voters,
                "witnesses": w,
                "implied_rule_is_black": r.implied_rule.same_function(&black),
                "profiles": vd.domain().profile_count(),
                "violating_profiles": r.violating_profiles.len(),
                "paradox": r.paradox,
            })))
        }
        Command::ArrowDomain { voters, candidates, orders, outcomes, out } => {
            let order_kind: OrderKind = serde_json::from_value(json!(orders))
                .map_err(|_| usage("invalid-parameter", format!("--orders must be linear or weak, not `{orders}`")))?;
            let outcome_mode: OutcomeMode = serde_json::from_value(json!(outcomes)).map_err(|_| {
                usage("invalid-parameter", format!("--outcomes must be social-order or winner, not `{outcomes}`"))
            })?;
            let config = VotingDomainConfig { candidates: *candidates, voters: *voters, outcome_mode, order_kind };
            let vd = VotingDomain::new(config, cap)?;
            let text = files::domain_to_json(vd.domain()) + "\n";
            let Some(path) = out else {
                return Ok(Done { raw: Some(text), ..done(Value::Null) });
            };
            std::fs::write(path, &text)
                .map_err(|e| usage("io-error", format!("cannot write `{}`: {e}", path.display())))?;
            Ok(done(json!({
                "profiles": vd.domain().profile_count(),
                "outcomes": vd.domain().outcome_count(),
                "file_sha256": crate::report::sha256_hex(text.as_bytes()),
            })))
        }
        Command::Posthoc { profile } => {
            let p = parse_profile(&read(profile, "profile", inputs)?)?;
            let config = VotingDomainConfig {
                candidates: p.candidate_count(),
                voters: p.voters(),
                outcome_mode: OutcomeMode::SocialOrder,
                order_kind: if p.is_linear() { OrderKind::Linear } else { OrderKind::Weak },
            };
            let vd = VotingDomain::new(config, cap)?;
            let w = posthoc_witness(&vd, &p)?;
            let tables: Vec<Value> = w.rules.iter().map(|f| render::rule(vd.domain(), f)).collect();
            let mut value = serde_json::to_value(&w).map_err(Error::from)?;
            value["tables"] = json!(tables);
            value["verified"] = json!(w.verified());
            Ok(done(value))
        }
        Command::DeceptionCheck { input, actual, statement, mask } => {
            let l = load(input, cap, inputs)?;
            let r = Resolver::new(&l.domain, cap);
            let actual = r.full(&parse_decision(actual)?)?;
            let (profile, rule, outcome) = r.partial(&parse_decision(statement)?)?;
            let s = Statement { profile, rule, outcome };
            let implied = s.implied(&actual, &l.axiom)?;
            let deceptive = is_deceptive(&s, &actual, &l.axiom)?;
            let transparent = match mask {
                Some(m) => Some(is_transparent(&l.axiom, DisclosureMask::parse(m)?, cap)?),
                None => None,
            };
            Ok(done(json!({
                "axiom": l.axiom.name(),
                "actual": { "decision": render::decision(&l.domain, &actual), "obeys": l.axiom.evaluate(&actual)? },
                "implied": { "decision": render::decision(&l.domain, &implied), "obeys": l.axiom.evaluate(&implied)? },
                "deceptive": deceptive,
                "transparent": transparent,
            })))
        }
        Command::VerifyPaper { example1_domain, example1_axiom } => {
            let mut fx = Fixtures::builtin();
            if let Some(p) = example1_domain {
                fx.example1_domain = std::fs::read_to_string(p)
                    .map_err(|e| usage("io-error", format!("cannot read `{}`: {e}", p.display())))?;
            }
            if let Some(p) = example1_axiom {
                fx.example1_axiom = std::fs::read_to_string(p)
                    .map_err(|e| usage("io-error", format!("cannot read `{}`: {e}", p.display())))?;
            }
            inputs.add("example1_domain", fx.example1_domain.as_bytes());
            inputs.add("example1_axiom", fx.example1_axiom.as_bytes());
            let results = reproduce_all(&fx, cap);
            let all = results.iter().all(|c| c.passed);
            let timing: Map<String, Value> =
                results.iter().map(|c| (format!("criterion_{}_ms", c.id), json!(c.elapsed_ms))).collect();
            Ok(Done {
                value: json!({
                    "criteria": results.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                    "all_passed": all,
                }),
                ok: all,
                raw: None,
                timing: Value::Object(timing),
            })
        }
    }
}

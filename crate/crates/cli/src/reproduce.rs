//! The reproducibility driver: each worked example and sweep as a pass/fail criterion.

use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use decision_axioms::calculus::{extensionally_equivalent, implied_rule, reduce_to_blackbox, detect_paradox};
use decision_axioms::census::run_census;
use decision_axioms::deception::{arrow_failures, posthoc_witness};
use decision_axioms::files::{parse_axiom, parse_domain};
use decision_axioms::voting::{
    black_axiom, borda, condorcet_winner, copeland, search_black_witnesses, RuleFamily, VotingDomain,
    VotingDomainConfig, VotingRule,
};
use decision_axioms::{fixtures, Axiom, Result};

use crate::report::sha256_hex;

pub const CRITERIA: [&str; 7] = [
    "example 1: reduction, implied rule f2, paradox at both profiles",
    "list membership and rule identity are equivalent yet partition decisions differently",
    "2x2 census: checks a-h",
    "2x3 census: checks a-d",
    "black's rule: witnesses found by search and the paradox at every profile",
    "post-hoc witnesses on all 36 micro-domain profiles",
    "determinism: repeated runs give identical results",
];

/// The fixture texts the first two criteria read.
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub example1_domain: String,
    pub example1_axiom: String,
}

impl Fixtures {
    pub fn builtin() -> Self {
        Fixtures {
            example1_domain: fixtures::EXAMPLE1_DOMAIN_JSON.to_owned(),
            example1_axiom: fixtures::EXAMPLE1_AXIOM_JSON.to_owned(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub passed: bool,
    pub detail: Value,
    pub elapsed_ms: u128,
}

impl CriterionResult {
    pub fn name(&self) -> &'static str {
        CRITERIA[self.id - 1]
    }

    pub fn to_json(&self) -> Value {
        json!({ "id": self.id, "name": self.name(), "passed": self.passed, "detail": self.detail })
    }
}

fn outcome(r: Result<(bool, Value)>) -> (bool, Value) {
    r.unwrap_or_else(|e| (false, json!({ "error": { "code": e.code(), "message": e.to_string() } })))
}

fn criterion1(fx: &Fixtures, cap: u64) -> Result<(bool, Value)> {
    let domain = Arc::new(parse_domain(&fx.example1_domain)?);
    let a = parse_axiom(&fx.example1_axiom, &domain, cap)?;
    let list = reduce_to_blackbox(&a, cap)?;
    let pairs: Vec<[String; 2]> = list
        .pairs()
        .into_iter()
        .map(|(x, y)| [domain.profile_label(x).to_owned(), domain.outcome_label(y).to_owned()])
        .collect();
    let expected = [["x1", "y1"], ["x2", "y2"]];
    let pairs_ok = pairs.len() == 2 && pairs.iter().zip(expected).all(|(p, e)| p[0] == e[0] && p[1] == e[1]);
    let f = implied_rule(&a, cap)?;
    let label = domain.rule_label(&f);
    let mut evaluations = Vec::new();
    for x in domain.profile_ids() {
        let d = domain.make_decision(x, &f)?;
        evaluations.push((domain.decision_labels(&d), a.evaluate(&d)?));
    }
    let passed = pairs_ok && label == "f2" && evaluations.iter().all(|(_, ok)| !ok);
    Ok((
        passed,
        json!({
            "reduction": pairs,
            "implied_rule": label,
            "evaluations": evaluations.iter().map(|(d, ok)| json!({ "decision": d, "obeys": ok })).collect::<Vec<_>>(),
        }),
    ))
}

fn criterion2(fx: &Fixtures, cap: u64) -> Result<(bool, Value)> {
    let domain = Arc::new(parse_domain(&fx.example1_domain)?);
    let list = [(domain.profile("x1")?, domain.outcome("y1")?), (domain.profile("x2")?, domain.outcome("y2")?)];
    let a1 = Axiom::list_membership(Arc::clone(&domain), &list)?;
    let a2 = Axiom::rule_identity(Arc::clone(&domain), &domain.rule_by_label("f2")?)?;
    let equivalent = extensionally_equivalent(&a1, &a2, cap)?;
    let mut separating = None;
    for d in domain.enumerate_decisions(cap)? {
        if a1.evaluate(&d)? && !a2.evaluate(&d)? {
            separating = Some(domain.decision_labels(&d));
            break;
        }
    }
    Ok((equivalent && separating.is_some(), json!({ "equivalent": equivalent, "separating_decision": separating })))
}

fn census_criterion(profiles: usize, outcomes: usize, ids: &[&str], cap: u64) -> Result<(bool, Value)> {
    let r = run_census(profiles, outcomes, cap)?;
    let checks: Vec<Value> = ids
        .iter()
        .map(|id| {
            let c = r.check(id).expect("known check id");
            json!({ "id": id, "ran": c.ran, "cases": c.cases, "failures": c.failures })
        })
        .collect();
    let passed = ids.iter().all(|id| r.check(id).is_some_and(|c| c.passed()));
    Ok((passed, json!({ "axioms": r.axioms, "rules": r.rules, "decisions": r.decisions, "checks": checks })))
}

fn criterion5(cap: u64) -> Result<(bool, Value)> {
    let Some(w) = search_black_witnesses(3, 5, cap)? else {
        return Ok((false, json!({ "witnesses": null })));
    };
    let (p, q) = w.profiles()?;
    let p_ok = condorcet_winner(&p).is_none() && borda(&p) != copeland(&p);
    let q_ok = condorcet_winner(&q).is_some_and(|c| c != borda(&q));
    let vd = VotingDomain::new(VotingDomainConfig::winner(3, w.voters), cap)?;
    let a = black_axiom(&vd)?;
    let r = detect_paradox(&a, cap)?;
    let black = vd.rule(&RuleFamily::Winner { rule: VotingRule::Black })?;
    let is_black = r.implied_rule.same_function(&black);
    let total = vd.domain().profile_count();
    Ok((
        p_ok && q_ok && is_black && r.violating_profiles.len() == total,
        json!({
            "voters": w.voters,
            "borda_ne_copeland": w.borda_ne_copeland,
            "condorcet_ne_borda": w.condorcet_ne_borda,
            "implied_rule_is_black": is_black,
            "violating_profiles": r.violating_profiles.len(),
            "profiles": total,
        }),
    ))
}

fn criterion6(cap: u64) -> Result<(bool, Value)> {
    let vd = VotingDomain::new(VotingDomainConfig::ARROW_MICRO, cap)?;
    let mut verified = 0;
    let mut every_rule_fails = true;
    let mut failures = Vec::new();
    for p in vd.profiles() {
        match posthoc_witness(&vd, p) {
            Ok(w) if w.verified() => {
                verified += 1;
                for f in &w.rules {
                    every_rule_fails &= !arrow_failures(&vd, f)?.is_empty();
                }
            }
            Ok(w) => failures.push(w.profile),
            Err(e) => failures.push(format!("{}: {e}", p.label())),
        }
    }
    let total = vd.profiles().len();
    Ok((
        verified == total && every_rule_fails,
        json!({
            "profiles": total,
            "verified": verified,
            "each_rule_fails_an_arrow_axiom": every_rule_fails,
            "failures": failures,
        }),
    ))
}

fn run_one(id: usize, fx: &Fixtures, cap: u64) -> CriterionResult {
    let start = Instant::now();
    let (passed, detail) = outcome(match id {
        1 => criterion1(fx, cap),
        2 => criterion2(fx, cap),
        3 => census_criterion(2, 2, &["a", "b", "c", "d", "e", "f", "g", "h"], cap),
        4 => census_criterion(2, 3, &["a", "b", "c", "d"], cap),
        5 => criterion5(cap),
        6 => criterion6(cap),
        _ => unreachable!("criteria 1-6"),
    });
    CriterionResult { id, passed, detail, elapsed_ms: start.elapsed().as_millis() }
}

fn covered_digest(results: &[CriterionResult]) -> String {
    let v: Vec<Value> = results.iter().map(CriterionResult::to_json).collect();
    sha256_hex(serde_json::to_string(&v).expect("json values serialize").as_bytes())
}

/// Runs criteria 1-6, then all of them again for criterion 7.
pub fn reproduce_all(fx: &Fixtures, cap: u64) -> Vec<CriterionResult> {
    let mut results: Vec<CriterionResult> = (1..=6).map(|id| run_one(id, fx, cap)).collect();
    let start = Instant::now();
    let again: Vec<CriterionResult> = (1..=6).map(|id| run_one(id, fx, cap)).collect();
    let (first, second) = (covered_digest(&results), covered_digest(&again));
    results.push(CriterionResult {
        id: 7,
        passed: first == second,
        detail: json!({ "first": first, "second": second }),
        elapsed_ms: start.elapsed().as_millis(),
    });
    results
}

/// Runs a single criterion from 1 to 6.
pub fn verify_criterion(id: usize, fx: &Fixtures, cap: u64) -> Option<CriterionResult> {
    (1..=6).contains(&id).then(|| run_one(id, fx, cap))
}

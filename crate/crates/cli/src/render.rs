//! JSON renderings of library results, by label.

use serde_json::{json, Map, Value};

use decision_axioms::calculus::{BlackboxList, ImpossibilityVerdict};
use decision_axioms::taxonomy::Witness;
use decision_axioms::{ClassSet, Decision, DecisionDomain, ProfileId, RuleTable};

pub fn decision(domain: &DecisionDomain, d: &Decision) -> Value {
    json!(domain.decision_labels(d))
}

pub fn rule(domain: &DecisionDomain, f: &RuleTable) -> Value {
    let table: Map<String, Value> = domain
        .profile_ids()
        .map(|x| (domain.profile_label(x).to_owned(), json!(domain.outcome_label(f.outcomes()[x.0]))))
        .collect();
    json!({ "label": domain.rule_label(f), "table": table })
}

pub fn profiles(domain: &DecisionDomain, xs: &[ProfileId]) -> Value {
    json!(xs.iter().map(|x| domain.profile_label(*x)).collect::<Vec<_>>())
}

pub fn blackbox(list: &BlackboxList) -> Value {
    let d = list.domain();
    let pairs: Vec<[&str; 2]> =
        list.pairs().into_iter().map(|(x, y)| [d.profile_label(x), d.outcome_label(y)]).collect();
    json!({
        "pairs": pairs,
        "impasses": profiles(d, &list.impasses()),
        "implementable": list.is_implementable(),
        "forcing": list.is_forcing(),
    })
}

pub fn classes(domain: &DecisionDomain, cs: &ClassSet) -> Value {
    let witnesses: Map<String, Value> = cs
        .witnesses()
        .map(|(c, w)| {
            let v = match w {
                Witness::Violates(d) => json!({ "violates": decision(domain, d) }),
                Witness::Obeys(d) => json!({ "obeys": decision(domain, d) }),
                Witness::Split { obeying, violating } => {
                    json!({ "obeying": decision(domain, obeying), "violating": decision(domain, violating) })
                }
            };
            (c.as_str().to_owned(), v)
        })
        .collect();
    json!({
        "classes": cs.classes().map(|c| c.as_str()).collect::<Vec<_>>(),
        "most_specific": cs.most_specific().as_str(),
        "method": cs.method(),
        "exigent_kind": cs.exigent_kind(),
        "refuted_by": witnesses,
    })
}

pub fn verdict(domain: &DecisionDomain, v: &ImpossibilityVerdict) -> Value {
    json!({
        "arrovian": v.arrovian,
        "method": v.method,
        "impasses": v.impasses.as_ref().map(|i| profiles(domain, i)),
        "witness_rule": v.witness_rule.as_ref().map(|f| rule(domain, f)),
    })
}

//! Transparency and deception checks, and post-hoc witnesses on voting domains.
//!
//! An agent who observes some components of a decision can audit an axiom
//! only if the axiom depends on nothing else. A statement about a decision is
//! deceptive when the actual decision violates the axiom but the decision the
//! statement implies would obey it.

use std::sync::Arc;

use serde::Serialize;

use crate::axiom::Axiom;
use crate::calculus::obeys_everywhere;
use crate::domain::{Decision, OutcomeId, ProfileId, RuleTable};
use crate::error::{Error, Result};
use crate::taxonomy::{classify, ClassSet};
use crate::voting::{arrow_axioms, dictator_of, iia_violation, pareto_violation, PreferenceProfile, RuleFamily, VotingDomain};

/// Which decision components an observer sees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DisclosureMask {
    pub profile: bool,
    pub rule: bool,
    pub outcome: bool,
}

impl DisclosureMask {
    pub fn new(profile: bool, rule: bool, outcome: bool) -> Result<Self> {
        if !(profile || rule || outcome) {
            return Err(Error::InvalidParameter("a disclosure mask must reveal at least one component".into()));
        }
        Ok(DisclosureMask { profile, rule, outcome })
    }

    /// Parses a comma-separated subset of `profile`, `rule`, `outcome` (or `x`, `f`, `y`).
    pub fn parse(text: &str) -> Result<Self> {
        let (mut p, mut r, mut o) = (false, false, false);
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match part {
                "profile" | "x" => p = true,
                "rule" | "f" => r = true,
                "outcome" | "y" => o = true,
                other => return Err(Error::InvalidParameter(format!("unknown decision component `{other}`"))),
            }
        }
        Self::new(p, r, o)
    }

    pub fn all() -> Self {
        DisclosureMask { profile: true, rule: true, outcome: true }
    }

    fn covers(&self, profile: bool, rule: bool, outcome: bool) -> bool {
        (!profile || self.profile) && (!rule || self.rule) && (!outcome || self.outcome)
    }
}

/// Whether an observer seeing `mask` can decide if the decision obeys `axiom`.
///
/// Declared requirements are used when present. Otherwise the axiom must be
/// classifiable on its enumerated domain; it is transparent iff it is trivial,
/// the mask shows everything, or some class that holds reads only disclosed
/// components.
pub fn is_transparent(axiom: &Axiom, mask: DisclosureMask, cap: u64) -> Result<bool> {
    if let Some(req) = axiom.requirements() {
        return Ok(mask.covers(req.profile, req.rule, req.outcome));
    }
    let classes = classify(axiom, cap).map_err(|e| match e {
        Error::CapExceeded { .. } => Error::UnclassifiedAxiom(axiom.name().to_owned()),
        other => other,
    })?;
    Ok(transparent_for(&classes, mask))
}

fn transparent_for(classes: &ClassSet, mask: DisclosureMask) -> bool {
    if classes.is_trivial() {
        return true;
    }
    if mask == DisclosureMask::all() {
        return true;
    }
    classes.classes().any(|c| match c.projection() {
        Some(p) => {
            let (x, f, y) = p.components();
            mask.covers(x, f, y)
        }
        None => false,
    })
}

/// A claim about a decision; unspecified components are taken from the actual decision.
#[derive(Clone, Debug, Default)]
pub struct Statement {
    pub profile: Option<ProfileId>,
    pub rule: Option<Arc<RuleTable>>,
    pub outcome: Option<OutcomeId>,
}

impl Statement {
    /// The decision the statement implies about `actual`.
    pub fn implied(&self, actual: &Decision, axiom: &Axiom) -> Result<Decision> {
        let domain = axiom.domain();
        let x = self.profile.unwrap_or(actual.profile());
        let f = self.rule.clone().unwrap_or_else(|| Arc::clone(actual.rule()));
        let d = domain.make_decision(x, &f).map_err(|e| Error::InconsistentStatement(e.to_string()))?;
        let y = self.outcome.unwrap_or(d.outcome());
        if y != d.outcome() {
            return Err(Error::InconsistentStatement(format!(
                "rule `{}` maps `{}` to `{}`, not `{}`",
                domain.rule_label(&f),
                domain.profile_label(x),
                domain.outcome_label(d.outcome()),
                domain.outcome_label(y)
            )));
        }
        Ok(d)
    }
}

/// `A(actual) = 0` and `A(implied) = 1`.
pub fn is_deceptive(statement: &Statement, actual: &Decision, axiom: &Axiom) -> Result<bool> {
    let implied = statement.implied(actual, axiom)?;
    Ok(!axiom.evaluate(actual)? && axiom.evaluate(&implied)?)
}

/// One check in a witness transcript.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub rule: String,
    pub property: String,
    pub passed: bool,
    pub detail: String,
}

/// Three rules agreeing on the outcome at `x`, each obeying a different pair
/// of the three Arrow axioms over the whole domain.
#[derive(Clone, Debug, Serialize)]
pub struct PosthocWitness {
    pub profile: String,
    pub outcome: String,
    /// Pareto and IIA.
    pub f1: String,
    /// IIA and non-dictatorship.
    pub f2: String,
    /// Non-dictatorship and Pareto.
    pub f3: String,
    #[serde(skip)]
    pub rules: [Arc<RuleTable>; 3],
    pub transcript: Vec<Check>,
}

impl PosthocWitness {
    pub fn verified(&self) -> bool {
        self.transcript.iter().all(|c| c.passed)
    }
}

/// Builds and verifies the witness at `profile`.
///
/// `f1` is voter 1's dictatorship, `y = f1(x)`; `f2` is the constant rule `y`;
/// `f3` is voter 1's dictatorship patched at the first profile `x' != x` where
/// the two leading voters disagree, to output voter 2's ballot there. Every
/// membership is checked on the whole domain; a failed check is an error
/// carrying the transcript.
pub fn posthoc_witness(vd: &VotingDomain, profile: &PreferenceProfile) -> Result<PosthocWitness> {
    let x = vd.profile_id(profile)?;
    if vd.config().voters < 2 {
        return Err(Error::InvalidParameter("post-hoc witnesses need at least two voters".into()));
    }
    let dictatorship = RuleFamily::Dictatorship { voter: 1 };
    let f1 = vd.rule(&dictatorship)?;
    let y = f1.outcomes()[x.0];
    let y_label = vd.domain().outcome_label(y).to_owned();
    let f2 = vd.rule(&RuleFamily::Constant { outcome: y_label.clone() })?;
    let (at, other) = vd
        .profiles()
        .iter()
        .enumerate()
        .find(|(i, p)| *i != x.0 && p.ballots()[0] != p.ballots()[1])
        .map(|(i, p)| (ProfileId(i), p.ballots()[1].render(vd.candidate_names())))
        .ok_or_else(|| Error::WitnessVerification("no profile where the first two voters disagree".into()))?;
    let f3 = vd.rule(&RuleFamily::Patched {
        base: Box::new(dictatorship),
        at: vd.domain().profile_label(at).to_owned(),
        replacement: other,
    })?;

    let transcript = verify_witness(vd, x, y, [&f1, &f2, &f3])?;
    let name = |f: &RuleTable| vd.domain().rule_label(f);
    let witness = PosthocWitness {
        profile: vd.domain().profile_label(x).to_owned(),
        outcome: y_label,
        f1: name(&f1),
        f2: name(&f2),
        f3: name(&f3),
        rules: [f1, f2, f3],
        transcript,
    };
    if !witness.verified() {
        let failed: Vec<String> = witness
            .transcript
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{} {}: {}", c.rule, c.property, c.detail))
            .collect();
        return Err(Error::WitnessVerification(failed.join("; ")));
    }
    Ok(witness)
}

/// Re-checks a witness through the axiom evaluators alone.
fn verify_witness(vd: &VotingDomain, x: ProfileId, y: OutcomeId, rules: [&Arc<RuleTable>; 3]) -> Result<Vec<Check>> {
    let (pareto, iia, nd) = arrow_axioms(vd)?;
    let domain = vd.domain();
    let mut out = Vec::new();
    let required: [[&Axiom; 2]; 3] = [[&pareto, &iia], [&iia, &nd], [&nd, &pareto]];
    for (f, axioms) in rules.iter().zip(required) {
        let label = domain.rule_label(f);
        let fx = domain.apply(f, x)?;
        out.push(Check {
            rule: label.clone(),
            property: "outcome".into(),
            passed: fx == y,
            detail: format!("f(x) = {}", domain.outcome_label(fx)),
        });
        for a in axioms {
            let ok = obeys_everywhere(a, f)?;
            out.push(Check {
                rule: label.clone(),
                property: a.name().to_owned(),
                passed: ok,
                detail: explain(vd, a.name(), f, ok)?,
            });
        }
    }
    Ok(out)
}

fn explain(vd: &VotingDomain, property: &str, f: &RuleTable, ok: bool) -> Result<String> {
    let domain = vd.domain();
    Ok(match (property, ok) {
        (_, true) => format!("holds at all {} profiles", domain.profile_count()),
        ("weak-pareto", false) => domain
            .profile_ids()
            .find_map(|x| pareto_violation(vd, x, f.outcomes()[x.0]).map(|p| (x, p)))
            .map_or_else(String::new, |(x, (a, b))| {
                let n = vd.candidate_names();
                format!("at `{}` all prefer {} to {}", domain.profile_label(x), n[a], n[b])
            }),
        ("iia", false) => iia_violation(vd, f)?.map_or_else(String::new, |v| {
            format!("profiles `{}` and `{}`", domain.profile_label(v.first), domain.profile_label(v.second))
        }),
        (_, false) => dictator_of(vd, f)?.map_or_else(String::new, |i| format!("voter {} is a dictator", i + 1)),
    })
}

/// For each rule, whether it obeys all three Arrow axioms everywhere, with the failing ones.
pub fn arrow_failures(vd: &VotingDomain, rule: &Arc<RuleTable>) -> Result<Vec<String>> {
    let (p, i, d) = arrow_axioms(vd)?;
    let mut failing = Vec::new();
    for a in [&p, &i, &d] {
        if !obeys_everywhere(a, rule)? {
            failing.push(a.name().to_owned());
        }
    }
    Ok(failing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axiom::InfoRequirements;
    use crate::domain::DEFAULT_CAP;
    use crate::fixtures;
    use crate::voting::VotingDomainConfig;

    fn masks() -> Vec<DisclosureMask> {
        (1..8u8).map(|m| DisclosureMask::new(m & 1 != 0, m & 2 != 0, m & 4 != 0).unwrap()).collect()
    }

    #[test]
    fn mask_parsing() {
        assert_eq!(DisclosureMask::parse("x,y").unwrap(), DisclosureMask::new(true, false, true).unwrap());
        assert_eq!(DisclosureMask::parse("rule").unwrap(), DisclosureMask::new(false, true, false).unwrap());
        assert!(DisclosureMask::parse("").is_err());
        assert!(DisclosureMask::parse("x,z").is_err());
    }

    #[test]
    fn transparency_by_class() {
        let d = fixtures::example1_domain();
        let xy = DisclosureMask::parse("profile,outcome").unwrap();
        let bb = Axiom::blackbox(d.clone(), &[(ProfileId(0), OutcomeId(0))]).unwrap();
        assert!(is_transparent(&bb, xy, DEFAULT_CAP).unwrap());
        let f = d.rule_by_label("f2").unwrap();
        let pr = Axiom::procedural(d, &[f]).unwrap();
        assert!(!is_transparent(&pr, xy, DEFAULT_CAP).unwrap());
        let ex = fixtures::example1_axiom();
        assert!(!is_transparent(&ex, xy, DEFAULT_CAP).unwrap());
        assert!(is_transparent(&ex, DisclosureMask::all(), DEFAULT_CAP).unwrap());
        // Extensional blackbox materialization is classified, not declared.
        let m = bb.materialize(DEFAULT_CAP).unwrap();
        assert!(m.requirements().is_none());
        assert!(is_transparent(&m, xy, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn transparency_is_monotone() {
        let d = fixtures::example1_domain();
        for a in 0..256u64 {
            let ax = Axiom::extensional("a", d.clone(), crate::bitset::BitSet::from_word(8, a)).unwrap();
            for m in masks() {
                if !is_transparent(&ax, m, DEFAULT_CAP).unwrap() {
                    continue;
                }
                for bigger in masks() {
                    if bigger.covers(m.profile, m.rule, m.outcome) {
                        assert!(is_transparent(&ax, bigger, DEFAULT_CAP).unwrap(), "{a} {m:?} {bigger:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn unclassifiable_axiom_is_an_error() {
        let big = Arc::new(crate::domain::numbered_domain(40, 2).unwrap());
        let opaque = Axiom::intensional("opaque", big, |_| true);
        let err = is_transparent(&opaque, DisclosureMask::all(), DEFAULT_CAP).unwrap_err();
        assert_eq!(err.code(), "unclassified-axiom");
        let declared = Axiom::intensional("d", crate::fixtures::example1_domain(), |_| true)
            .requiring(InfoRequirements::new(true, true, true));
        assert!(!is_transparent(&declared, DisclosureMask::parse("x,f").unwrap(), DEFAULT_CAP).unwrap());
    }

    #[test]
    fn example_statement_about_f1_is_deceptive() {
        let a = fixtures::example1_axiom();
        let d = a.domain();
        let actual = d.make_decision(ProfileId(0), &d.rule_by_label("f2").unwrap()).unwrap();
        let claim = Statement { rule: Some(d.rule_by_label("f1").unwrap()), ..Statement::default() };
        assert!(is_deceptive(&claim, &actual, &a).unwrap());
        assert!(!is_deceptive(&Statement::default(), &actual, &a).unwrap());
        let wrong = Statement { outcome: Some(OutcomeId(1)), ..claim };
        assert_eq!(is_deceptive(&wrong, &actual, &a).unwrap_err().code(), "inconsistent-statement");
    }

    #[test]
    fn obeying_decisions_are_never_deceptive() {
        let a = fixtures::example1_axiom();
        let d = a.domain();
        for dec in d.enumerate_decisions(DEFAULT_CAP).unwrap() {
            if !a.evaluate(&dec).unwrap() {
                continue;
            }
            for f in d.enumerate_rules(DEFAULT_CAP).unwrap() {
                for x in d.profile_ids() {
                    let s = Statement { profile: Some(x), rule: Some(f.clone()), outcome: None };
                    assert!(!is_deceptive(&s, &dec, &a).unwrap());
                }
            }
        }
    }

    #[test]
    fn posthoc_witness_at_one_profile() {
        let vd = VotingDomain::new(VotingDomainConfig::ARROW_MICRO, DEFAULT_CAP).unwrap();
        let w = posthoc_witness(&vd, vd.profile(ProfileId(7))).unwrap();
        assert!(w.verified());
        assert_eq!(w.transcript.len(), 9);
        for f in &w.rules {
            assert!(!arrow_failures(&vd, f).unwrap().is_empty());
        }
        let winner = VotingDomain::new(VotingDomainConfig::winner(3, 2), DEFAULT_CAP).unwrap();
        assert!(posthoc_witness(&winner, winner.profile(ProfileId(0))).is_err());
    }
}

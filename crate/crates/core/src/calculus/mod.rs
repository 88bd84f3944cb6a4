//! Blackbox reduction, procedural extension, impossibility, forcing and the
//! decision-evaluation paradox.

mod blackbox;
mod forcing;
mod impossibility;

pub use blackbox::{
    extensionally_equivalent, procedural_extension, reduce_to_blackbox, BlackboxList, ProceduralExtension,
};
pub(crate) use blackbox::reduce_table;
pub use forcing::{
    detect_general_paradox, detect_paradox, forced_outcome, implied_rule, implied_rule_of, is_forcing,
    GeneralParadoxReport, ParadoxReport,
};
pub use impossibility::{
    find_impasses, is_arrovian, is_arrovian_with, obeys_everywhere, violations, Arrovian, ImpossibilityVerdict,
    VerdictMethod,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::axiom::Axiom;
    use crate::bitset::BitSet;
    use crate::domain::{numbered_domain, DecisionDomain, LabelSpace, OutcomeId, ProfileId, RuleTable, DEFAULT_CAP};
    use crate::error::Cardinality;
    use crate::fixtures;

    fn d22() -> Arc<DecisionDomain> {
        Arc::new(numbered_domain(2, 2).unwrap())
    }

    fn labels(d: &DecisionDomain, b: &BlackboxList) -> Vec<(String, String)> {
        b.pairs()
            .into_iter()
            .map(|(x, y)| (d.profile_label(x).to_owned(), d.outcome_label(y).to_owned()))
            .collect()
    }

    fn s(a: &str, b: &str) -> (String, String) {
        (a.to_owned(), b.to_owned())
    }

    #[test]
    fn example_reduction() {
        let a = fixtures::example1_axiom();
        let b = reduce_to_blackbox(&a, DEFAULT_CAP).unwrap();
        assert_eq!(labels(a.domain(), &b), vec![s("x1", "y1"), s("x2", "y2")]);
    }

    #[test]
    fn trivial_reduction_covers_all_pairs() {
        let b = reduce_to_blackbox(&Axiom::positively_trivial(d22()), DEFAULT_CAP).unwrap();
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn reduction_is_idempotent_on_census() {
        let d = d22();
        for a in 0..256u64 {
            let ax = Axiom::extensional("a", d.clone(), BitSet::from_word(8, a)).unwrap();
            let b = reduce_to_blackbox(&ax, DEFAULT_CAP).unwrap();
            assert_eq!(reduce_to_blackbox(&b.as_axiom(), DEFAULT_CAP).unwrap(), b);
        }
    }

    #[test]
    fn list_and_rule_axioms_are_equivalent_but_differ() {
        let (a1, a2) = fixtures::list_and_rule_axioms();
        assert!(extensionally_equivalent(&a1, &a2, DEFAULT_CAP).unwrap());
        assert!(extensionally_equivalent(&a1, &a1, DEFAULT_CAP).unwrap());
        let t1 = a1.truth_table(DEFAULT_CAP).unwrap();
        let t2 = a2.truth_table(DEFAULT_CAP).unwrap();
        assert_ne!(t1, t2);
    }

    #[test]
    fn equivalence_rejects_mixed_domains() {
        let a = Axiom::positively_trivial(d22());
        let b = Axiom::positively_trivial(Arc::new(numbered_domain(2, 3).unwrap()));
        assert_eq!(extensionally_equivalent(&a, &b, DEFAULT_CAP).unwrap_err().code(), "domain-mismatch");
    }

    #[test]
    fn extension_of_example_list_is_f2() {
        let d = d22();
        let b = BlackboxList::from_pairs(d.clone(), [(ProfileId(0), OutcomeId(0)), (ProfileId(1), OutcomeId(1))]).unwrap();
        let ext = procedural_extension(&b);
        let rules = ext.rules(DEFAULT_CAP).unwrap();
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].name(), Some("f2"));
        assert!(ext.contains(&d.rule_by_label("f2").unwrap()));
        assert!(!ext.contains(&d.rule_by_label("f1").unwrap()));
    }

    #[test]
    fn extension_with_impasse_is_empty() {
        let d = d22();
        let b = BlackboxList::from_pairs(d.clone(), [(ProfileId(0), OutcomeId(0))]).unwrap();
        assert_eq!(b.impasses(), vec![ProfileId(1)]);
        let ext = procedural_extension(&b);
        assert_eq!(ext.count(), Cardinality::Finite(0));
        assert!(ext.is_negatively_trivial());
        assert!(ext.rules(DEFAULT_CAP).unwrap().is_empty());
        assert_eq!(find_impasses(&b.as_axiom(), DEFAULT_CAP).unwrap(), vec![ProfileId(1)]);
    }

    #[test]
    fn extension_listing_respects_cap() {
        let big = Arc::new(numbered_domain(30, 2).unwrap());
        let b = reduce_to_blackbox(&Axiom::positively_trivial(big), DEFAULT_CAP).unwrap();
        let ext = procedural_extension(&b);
        assert_eq!(ext.count(), Cardinality::Finite(1 << 30));
        assert_eq!(ext.rules(DEFAULT_CAP).unwrap_err().code(), "cap-exceeded");
    }

    #[test]
    fn example_is_arrovian_without_impasse() {
        let v = is_arrovian(&fixtures::example1_axiom(), DEFAULT_CAP).unwrap();
        assert_eq!(v.arrovian, Arrovian::Yes);
        assert_eq!(v.impasses, Some(vec![]));
        assert_eq!(v.method, VerdictMethod::RuleEnumeration);
        let top = is_arrovian(&Axiom::positively_trivial(d22()), DEFAULT_CAP).unwrap();
        assert_eq!(top.arrovian, Arrovian::No);
        assert!(top.witness_rule.is_some());
    }

    #[test]
    fn arrovian_routes_beyond_cap() {
        let big = Arc::new(numbered_domain(40, 3).unwrap());
        // Declared blackbox with every slice non-empty.
        let pairs: Vec<_> = big.profile_ids().map(|x| (x, OutcomeId(x.0 % 3))).collect();
        let bb = Axiom::blackbox(big.clone(), &pairs).unwrap();
        let v = is_arrovian(&bb, DEFAULT_CAP).unwrap();
        assert_eq!((v.arrovian, v.method), (Arrovian::No, VerdictMethod::BlackboxShortcut));

        let with_gap = Axiom::blackbox(big.clone(), &pairs[1..]).unwrap();
        let v = is_arrovian(&with_gap, DEFAULT_CAP).unwrap();
        assert_eq!((v.arrovian, v.method), (Arrovian::Yes, VerdictMethod::Impasse));
        assert_eq!(v.impasses, Some(vec![ProfileId(0)]));

        let f = big.constant_rule(OutcomeId(2)).unwrap();
        let proc_ax = Axiom::procedural(big.clone(), std::slice::from_ref(&f)).unwrap();
        let v = is_arrovian(&proc_ax, DEFAULT_CAP).unwrap();
        assert_eq!(v.arrovian, Arrovian::Unknown);
        let v = is_arrovian_with(&proc_ax, DEFAULT_CAP, &[f]).unwrap();
        assert_eq!((v.arrovian, v.method), (Arrovian::No, VerdictMethod::WitnessRule));
    }

    #[test]
    fn example_is_forcing_and_implies_f2() {
        let a = fixtures::example1_axiom();
        assert!(is_forcing(&a, DEFAULT_CAP).unwrap());
        let d = a.domain();
        assert_eq!(forced_outcome(&a, d.profile("x1").unwrap(), DEFAULT_CAP).unwrap(), d.outcome("y1").unwrap());
        let f = implied_rule(&a, DEFAULT_CAP).unwrap();
        assert_eq!(f.name(), Some("f2"));
    }

    #[test]
    fn structural_axiom_is_never_forcing() {
        let d = d22();
        let a = Axiom::structural(d.clone(), &[ProfileId(0)]).unwrap();
        assert!(!is_forcing(&a, DEFAULT_CAP).unwrap());
        let err = forced_outcome(&a, ProfileId(0), DEFAULT_CAP).unwrap_err();
        assert_eq!(err.code(), "not-forcing");
        assert_eq!(implied_rule(&a, DEFAULT_CAP).unwrap_err().code(), "not-forcing");
        assert_eq!(detect_paradox(&a, DEFAULT_CAP).unwrap_err().code(), "not-forcing");
    }

    #[test]
    fn procedural_singleton_implies_itself() {
        let d = d22();
        for f in d.enumerate_rules(DEFAULT_CAP).unwrap() {
            let a = Axiom::rule_identity(d.clone(), &f).unwrap();
            assert_eq!(*implied_rule(&a, DEFAULT_CAP).unwrap(), *f);
            assert!(!detect_paradox(&a, DEFAULT_CAP).unwrap().paradox);
        }
    }

    #[test]
    fn example_paradox_everywhere() {
        let r = detect_paradox(&fixtures::example1_axiom(), DEFAULT_CAP).unwrap();
        assert!(r.paradox);
        assert_eq!(r.violating_profiles, vec![ProfileId(0), ProfileId(1)]);
        let forcing_bb = BlackboxList::from_pairs(d22(), [(ProfileId(0), OutcomeId(1)), (ProfileId(1), OutcomeId(1))]).unwrap();
        assert!(!detect_paradox(&forcing_bb.as_axiom(), DEFAULT_CAP).unwrap().paradox);
    }

    #[test]
    fn general_paradox_for_non_forcing_arrovian() {
        let d = d22();
        // L = {(x1,f1,y1), (x1,f3,y2), (x2,f4,y2)}: implementable, not forcing, Arrovian.
        let mut bits = BitSet::new(8);
        for i in [0, 4, 7] {
            bits.set(i, true);
        }
        let a = Axiom::extensional("g", d, bits).unwrap();
        assert!(!is_forcing(&a, DEFAULT_CAP).unwrap());
        assert_eq!(is_arrovian(&a, DEFAULT_CAP).unwrap().arrovian, Arrovian::Yes);
        let r = detect_general_paradox(&a, DEFAULT_CAP).unwrap();
        assert!(r.implementable && r.paradox);
        assert_eq!(r.rules.len(), 2);
    }

    #[test]
    fn explicit_universe_implied_rule_may_be_missing() {
        let p = LabelSpace::from_labels(["x1", "x2"]).unwrap();
        let o = LabelSpace::from_labels(["y1", "y2"]).unwrap();
        let d = Arc::new(
            DecisionDomain::explicit(
                p,
                o,
                vec![
                    RuleTable::named("f1", vec![OutcomeId(0), OutcomeId(0)]),
                    RuleTable::named("f4", vec![OutcomeId(1), OutcomeId(1)]),
                ],
            )
            .unwrap(),
        );
        let mut bits = BitSet::new(4);
        bits.set(0, true);
        bits.set(3, true);
        let a = Axiom::extensional("L", d, bits).unwrap();
        assert!(is_forcing(&a, DEFAULT_CAP).unwrap());
        assert_eq!(implied_rule(&a, DEFAULT_CAP).unwrap_err().code(), "rule-outside-universe");
    }

    #[test]
    fn declared_reduction_is_verified() {
        let big = Arc::new(numbered_domain(30, 2).unwrap());
        let f = big.constant_rule(OutcomeId(0)).unwrap();
        let g = big.constant_rule(OutcomeId(1)).unwrap();
        let ff = f.clone();
        let honest = Axiom::procedural(big.clone(), std::slice::from_ref(&f))
            .unwrap()
            .with_reduction(move |_| vec![(OutcomeId(0), ff.clone())]);
        let b = reduce_to_blackbox(&honest, DEFAULT_CAP).unwrap();
        assert!(b.is_forcing());
        let lying = Axiom::procedural(big, std::slice::from_ref(&f))
            .unwrap()
            .with_reduction(move |_| vec![(OutcomeId(1), g.clone())]);
        assert_eq!(reduce_to_blackbox(&lying, DEFAULT_CAP).unwrap_err().code(), "witness-verification-failure");
    }
}

//! Built-in worked examples on the 2x2 all-functions domain.

use std::sync::Arc;

use crate::axiom::Axiom;
use crate::bitset::BitSet;
use crate::domain::{numbered_domain, DecisionDomain, OutcomeId, ProfileId};

pub const EXAMPLE1_DOMAIN_JSON: &str = include_str!("../fixtures/example1.domain.json");
pub const EXAMPLE1_AXIOM_JSON: &str = include_str!("../fixtures/example1.axiom.json");

/// Profiles `x1, x2`, outcomes `y1, y2`, all four rules `f1..f4`.
pub fn example1_domain() -> Arc<DecisionDomain> {
    Arc::new(numbered_domain(2, 2).expect("2x2 domain is valid"))
}

/// Obeyed exactly by `(x1, f1, y1)` and `(x2, f4, y2)`.
pub fn example1_axiom() -> Axiom {
    let domain = example1_domain();
    let mut bits = BitSet::new(8);
    for (x, f) in [("x1", "f1"), ("x2", "f4")] {
        let x = domain.profile(x).expect("fixture profile");
        let f = domain.rule_by_label(f).expect("fixture rule");
        let d = domain.make_decision(x, &f).expect("fixture decision");
        bits.set(domain.decision_index(&d).expect("fixture index"), true);
    }
    Axiom::extensional("example1", domain, bits).expect("fixture bitset matches domain")
}

/// The list-membership and rule-identity axioms built from the graph of `f2`,
/// `L = {(x1, y1), (x2, y2)}`.
pub fn list_and_rule_axioms() -> (Axiom, Axiom) {
    let domain = example1_domain();
    let list = [(ProfileId(0), OutcomeId(0)), (ProfileId(1), OutcomeId(1))];
    let f_l = domain.rule_by_label("f2").expect("f2 exists");
    let a1 = Axiom::list_membership(Arc::clone(&domain), &list).expect("valid pairs");
    let a2 = Axiom::rule_identity(domain, &f_l).expect("valid rule");
    (a1, a2)
}

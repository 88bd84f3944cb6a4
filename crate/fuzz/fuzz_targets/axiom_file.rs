#![no_main]

use decision_axioms::files::{axiom_to_spec, parse_axiom, Resolver};
use decision_axioms::fixtures::example1_domain;
use libfuzzer_sys::fuzz_target;

const CAP: u64 = 4096;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let domain = example1_domain();
    if let Ok(axiom) = parse_axiom(text, &domain, CAP) {
        let table = axiom.truth_table(CAP).expect("2x2 domain is enumerable");
        let spec = axiom_to_spec(&axiom, CAP).expect("2x2 domain is enumerable");
        let back = Resolver::new(&domain, CAP).axiom(&spec).expect("emitted axiom files build");
        assert_eq!(back.truth_table(CAP).unwrap(), table);
    }
});

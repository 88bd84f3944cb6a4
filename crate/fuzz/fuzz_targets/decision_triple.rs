#![no_main]

use decision_axioms::files::{parse_decision, Resolver};
use decision_axioms::fixtures::example1_domain;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_decision(text) {
        assert_eq!(parse_decision(&p.to_string()).unwrap(), p);
        let domain = example1_domain();
        let r = Resolver::new(&domain, 4096);
        let _ = r.partial(&p);
        let _ = r.full(&p);
    }
});

#![no_main]

use decision_axioms::files::{domain_to_json, parse_domain};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(domain) = parse_domain(text) {
        let again = parse_domain(&domain_to_json(&domain)).expect("emitted domain files parse");
        assert!(again == domain);
    }
});

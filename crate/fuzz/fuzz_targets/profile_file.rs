#![no_main]

use decision_axioms::voting::{parse_profile, PreferenceProfile, Ranking};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_profile(text) {
        let again = PreferenceProfile::from_file(&p.to_file()).expect("emitted profiles parse");
        assert_eq!(again.label(), p.label());
    }
    let names = decision_axioms::voting::candidate_names(4);
    if let Ok(r) = Ranking::parse(text, &names) {
        assert_eq!(Ranking::parse(&r.render(&names), &names).unwrap(), r);
    }
});

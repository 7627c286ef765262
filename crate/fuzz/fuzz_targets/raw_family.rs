#![no_main]

use libfuzzer_sys::fuzz_target;
use somp::json::parse_raw_family;
use somp::{closure, validate};

const CAP: usize = 256;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(raw) = parse_raw_family(text) else {
        return;
    };
    if raw.universe_size > 64 || raw.events.len() > 64 {
        return;
    }
    let v = validate(raw.universe_size, &raw.events).expect("universe already checked");
    assert_eq!(v.report.ok(), v.somp.is_some());
    if let Ok(s) = closure(raw.universe_size, &raw.events, CAP) {
        let again = validate(s.universe_size(), s.events()).unwrap();
        assert!(again.report.ok(), "closure violates the axioms");
        if let Some(valid) = v.somp {
            assert_eq!(valid, s);
        }
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use somp::json::{state_set_from_json, state_set_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ss) = state_set_from_json(text) {
        let out = state_set_to_json(&ss);
        assert_eq!(state_set_to_json(&state_set_from_json(&out).unwrap()), out);
    }
});

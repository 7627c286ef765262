#![no_main]

use libfuzzer_sys::fuzz_target;
use somp::json::{transversal_from_json, transversal_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = transversal_from_json(text) {
        let out = transversal_to_json(&t);
        assert_eq!(transversal_to_json(&transversal_from_json(&out).unwrap()), out);
    }
});

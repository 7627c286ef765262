#![no_main]

use libfuzzer_sys::fuzz_target;
use somp::json::{somp_from_json, somp_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = somp_from_json(text) {
        let out = somp_to_json(&s);
        let again = somp_from_json(&out).expect("emitted family parses");
        assert_eq!(again, s);
        assert_eq!(somp_to_json(&again), out);
    }
});

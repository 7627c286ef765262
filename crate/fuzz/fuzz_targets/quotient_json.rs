#![no_main]

use libfuzzer_sys::fuzz_target;
use somp::json::{quotient_from_json, quotient_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = quotient_from_json(text) {
        q.check_shape().expect("parsed quotients are well formed");
        let out = quotient_to_json(&q);
        assert_eq!(quotient_to_json(&quotient_from_json(&out).unwrap()), out);
    }
});

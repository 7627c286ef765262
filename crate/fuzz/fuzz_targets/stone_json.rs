#![no_main]

use libfuzzer_sys::fuzz_target;
use somp::json::{stone_from_json, stone_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = stone_from_json(text) {
        r.check_shape().expect("parsed representations are well formed");
        let out = stone_to_json(&r);
        assert_eq!(stone_to_json(&stone_from_json(&out).unwrap()), out);
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use somp::json::{partition_from_json, partition_to_json};
use somp::{indistinguishability_partition, partition_boolean};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = partition_from_json(text) {
        let out = partition_to_json(&p);
        assert_eq!(partition_to_json(&partition_from_json(&out).unwrap()), out);
        if p.len() <= 10 {
            let b = partition_boolean(&p).unwrap();
            assert_eq!(indistinguishability_partition(&b), p);
        }
    }
});

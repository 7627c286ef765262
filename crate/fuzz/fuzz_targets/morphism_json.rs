#![no_main]

use libfuzzer_sys::fuzz_target;
use somp::json::MorphismDoc;
use somp::make_even;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = MorphismDoc::from_json(text) {
        let out = doc.to_json();
        assert_eq!(MorphismDoc::from_json(&out).unwrap().to_json(), out);
        let s = make_even(4).unwrap();
        if let Ok(m) = doc.bind(&s, &s) {
            let _ = m.violations();
            let _ = m.is_somp_isomorphism();
        }
    }
});

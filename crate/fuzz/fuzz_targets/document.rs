#![no_main]

use libfuzzer_sys::fuzz_target;
use somp::json::Document;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = Document::parse(text) {
        let out = doc.to_json();
        let again = Document::parse(&out).expect("emitted document parses");
        assert_eq!(again.kind(), doc.kind());
        assert_eq!(again.to_json(), out);
        if doc.kind() == "partition" {
            return;
        }
        let _ = doc.into_somp();
    }
});

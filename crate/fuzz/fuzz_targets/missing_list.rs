#![no_main]

use libfuzzer_sys::fuzz_target;
use qclosed::leftmost::{parse_missing, word_from_missing};
use qclosed::SubcategorySpec;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(list) = parse_missing(text) {
            assert!(list.iter().all(|i| i.j >= 1));
            let spec = SubcategorySpec::new(list);
            let _ = word_from_missing(&spec);
        }
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use qclosed::{Quiver, WeylGroup, Word};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(word) = Word::parse(text) {
            assert!(word.letters().iter().all(|&s| s >= 1));
            assert_eq!(Word::parse(&word.to_string()).unwrap(), word);
            if word.len() <= 64 {
                let group = WeylGroup::new(&Quiver::builtin("A3").unwrap());
                let _ = group.evaluate(&word);
            }
        }
    }
});

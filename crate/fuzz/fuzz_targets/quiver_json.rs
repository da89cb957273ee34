#![no_main]

use libfuzzer_sys::fuzz_target;
use qclosed::Quiver;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(q) = Quiver::from_json(text) {
            // A validated quiver must survive a serialization round trip.
            assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
            let _ = q.euler_matrix();
            let _ = q.coxeter_word();
        }
    }
});

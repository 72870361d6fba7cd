#![no_main]

use hord_core::trace::{canonicalize, verify_trace};
use libfuzzer_sys::fuzz_target;

// Input is `actual NUL golden`.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let (a, b) = text.split_once('\0').unwrap_or((text, text));
    if let Ok(c) = canonicalize(a) {
        assert_eq!(canonicalize(&c).as_deref(), Ok(c.as_str()));
        assert!(verify_trace(a, &c).is_ok());
    }
    let _ = verify_trace(a, b);
});

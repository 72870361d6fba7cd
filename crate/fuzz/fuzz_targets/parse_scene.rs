#![no_main]

use hord_core::scene::parse_scene;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Err(e) = parse_scene(text) {
            assert!(e.line >= 1);
        }
    }
});

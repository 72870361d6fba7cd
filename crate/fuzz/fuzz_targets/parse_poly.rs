#![no_main]

use hord_core::field::Field;
use hord_core::poly::Ring;
use libfuzzer_sys::fuzz_target;

// First byte picks the characteristic; the rest is polynomial text.
fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let ch = [0u64, 2, 3, 5][usize::from(sel % 4)];
    let ring = Ring::new(Field::new(ch).unwrap(), vec!["z".into(), "x".into(), "y".into()]).unwrap();
    let Ok(f) = ring.parse(text) else { return };
    // Over F_p every coefficient prints as an integer, so the text round-trips.
    if ch > 0 {
        let again = ring.parse(&ring.format(&f)).expect("formatted polynomial parses");
        assert_eq!(again, f);
    }
});

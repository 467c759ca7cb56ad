#![no_main]

use cai_core::parse_unipoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_unipoly(s) {
        // Display output must parse back to the same polynomial.
        let shown = p.to_string();
        assert_eq!(parse_unipoly(&shown).as_ref(), Ok(&p), "{shown}");
    }
});

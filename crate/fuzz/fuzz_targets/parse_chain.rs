#![no_main]

use cai_core::PuiseuxChain;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(chain) = PuiseuxChain::from_json(s) else { return };
    let report = chain.validate();
    if report.is_valid() {
        let inv = chain.invariants().expect("valid chains have invariants");
        assert!(!inv.positive_braid || inv.suff_negative);
    } else {
        assert!(chain.invariants().is_err());
    }
    let again = PuiseuxChain::from_json(&chain.to_json().to_string()).unwrap();
    assert_eq!(again, chain);
});

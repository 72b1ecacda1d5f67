#![no_main]

use libfuzzer_sys::fuzz_target;
use shrubfo::logic::{parse_formula, render_formula};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_formula(text) {
        let again = parse_formula(&render_formula(&f)).expect("rendered formulas parse");
        assert_eq!(again, f);
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use shrubfo::graph::io::{parse_forest, write_forest};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(ef) = parse_forest(text) {
        assert_eq!(parse_forest(&write_forest(&ef)).unwrap(), ef);
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use shrubfo::graph::io::{parse_tree_model, write_tree_model};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(tm) = parse_tree_model(text) {
        assert_eq!(parse_tree_model(&write_tree_model(&tm)).unwrap(), tm);
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use shrubfo::graph::io::{parse_tree, write_tree};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_tree(text) {
        assert_eq!(parse_tree(&write_tree(&t)).unwrap(), t);
    }
});

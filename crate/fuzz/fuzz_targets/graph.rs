#![no_main]

use libfuzzer_sys::fuzz_target;
use shrubfo::graph::io::{parse_graph_file, write_graph_file};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph_file("<fuzz>", text) {
        assert_eq!(parse_graph_file("<fuzz>", &write_graph_file(&g)).unwrap(), g);
    }
});

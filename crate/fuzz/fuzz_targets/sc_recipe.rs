#![no_main]

use libfuzzer_sys::fuzz_target;
use shrubfo::graph::{build_sc_graph, ScRecipe};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = ScRecipe::parse(text) {
        assert_eq!(ScRecipe::parse(&r.render()).unwrap(), r);
        if r.leaf_count() <= 256 {
            assert_eq!(build_sc_graph(&r).map(|g| g.n()).ok(), Some(r.leaf_count()));
        }
    }
});

//! The tree JSON parser must never panic; accepted trees round-trip and
//! expose a non-panicking graph expansion when reduced.

#![no_main]

use libfuzzer_sys::fuzz_target;
use modgraph::io::{tree_from_json, tree_to_json};
use modgraph::mdtree::graph_of;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(t) = tree_from_json(text) {
            let canonical = tree_to_json(&t);
            let back = tree_from_json(&canonical).expect("canonical form must parse");
            assert_eq!(back, t);
            if t.is_reduced() && t.size() <= 512 {
                let _ = graph_of(&t);
            }
        }
    }
});

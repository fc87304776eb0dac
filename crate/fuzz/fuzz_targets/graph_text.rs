//! The graph text parser must never panic, and accepted inputs must
//! round-trip through the canonical writer.

#![no_main]

use libfuzzer_sys::fuzz_target;
use modgraph::io::{graph_from_text, graph_to_text};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(g) = graph_from_text(text) {
            let canonical = graph_to_text(&g);
            let back = graph_from_text(&canonical).expect("canonical form must parse");
            assert_eq!(back, g);
        }
    }
});

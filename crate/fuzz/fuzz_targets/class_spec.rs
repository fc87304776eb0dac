//! The class-specification parser must never panic, and accepted classes
//! serialize back to an equivalent specification.

#![no_main]

use libfuzzer_sys::fuzz_target;
use modgraph::io::{class_from_json, class_to_json};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(class) = class_from_json(text) {
            let canonical = class_to_json(&class).expect("file classes serialize");
            let back = class_from_json(&canonical).expect("canonical form must parse");
            assert_eq!(class_to_json(&back).unwrap(), canonical);
        }
    }
});

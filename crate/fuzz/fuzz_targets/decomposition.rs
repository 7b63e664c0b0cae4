#![no_main]

use libfuzzer_sys::fuzz_target;
use orthotree::io::{decomposition_to_value, parse_decomposition, to_pretty};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(d) = parse_decomposition(s) {
            assert_eq!(parse_decomposition(&to_pretty(&decomposition_to_value(&d))).ok(), Some(d));
        }
    }
});

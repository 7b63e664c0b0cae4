#![no_main]

use libfuzzer_sys::fuzz_target;
use orthotree::io::{parse_rational_str, rational_value, rational_from_value};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(x) = parse_rational_str(s) {
            assert_eq!(rational_from_value(&rational_value(&x)).ok(), Some(x));
        }
    }
});

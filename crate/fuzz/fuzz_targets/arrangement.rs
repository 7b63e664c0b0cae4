#![no_main]

use libfuzzer_sys::fuzz_target;
use orthotree::io::parse_arrangement;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(a) = parse_arrangement(s) {
            let _ = a.planarize();
        }
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use orthotree::io::parse_drawing;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(d) = parse_drawing(s) {
            let _ = d.planarize();
        }
    }
});

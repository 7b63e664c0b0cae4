#![no_main]

use libfuzzer_sys::fuzz_target;
use orthotree::io::parse_rects;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(rects) = parse_rects(s) {
            if rects.len() <= 64 {
                let _ = orthotree::rects::rects_to_paths(&rects);
                let _ = orthotree::rects::is_hvo_alternating(&rects);
            }
        }
    }
});

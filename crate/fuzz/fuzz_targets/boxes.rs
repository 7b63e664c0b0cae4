#![no_main]

use libfuzzer_sys::fuzz_target;
use orthotree::io::parse_boxes;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(boxes) = parse_boxes(s) {
            let _ = orthotree::rects::common_box(&boxes);
        }
    }
});

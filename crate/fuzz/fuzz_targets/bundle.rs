//! Parses a bundle and validates every decomposition against its graph.
#![no_main]

use libfuzzer_sys::fuzz_target;
use orthotree::io::parse_bundle;

fuzz_target!(|data: &[u8]| {
    if data.len() > 1 << 16 {
        return;
    }
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(b) = parse_bundle(s) {
            for d in &b.decompositions {
                let _ = d.check(&b.graph);
            }
        }
    }
});

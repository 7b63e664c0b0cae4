#![no_main]

use libfuzzer_sys::fuzz_target;
use orthotree::io::parse_graph;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(g) = parse_graph(s) {
            // Emitting and re-reading must give the same graph back.
            let text = orthotree::io::to_pretty(&orthotree::io::graph_to_value(&g));
            assert_eq!(parse_graph(&text).ok(), Some(g));
        }
    }
});

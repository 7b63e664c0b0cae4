//! Replays the checked-in fuzz seeds through the parsers they target.

use std::path::Path;

use orthotree::io;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let bytes = std::fs::read(&path).unwrap();
            (path.display().to_string(), String::from_utf8_lossy(&bytes).into_owned())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn graph_seeds() {
    let parsed: Vec<bool> = seeds("graph").iter().map(|(_, s)| io::parse_graph(s).is_ok()).collect();
    assert!(parsed.contains(&true) && parsed.contains(&false));
}

#[test]
fn decomposition_seeds() {
    for (name, s) in seeds("decomposition") {
        let d = io::parse_decomposition(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(io::parse_decomposition(&io::to_pretty(&io::decomposition_to_value(&d))).unwrap(), d);
    }
}

#[test]
fn bundle_seeds() {
    let mut valid = 0;
    for (_, s) in seeds("bundle") {
        let b = io::parse_bundle(&s).unwrap();
        if b.decompositions.iter().all(|d| d.check(&b.graph).is_ok()) {
            valid += 1;
        }
    }
    assert_eq!(valid, 2);
}

#[test]
fn arrangement_and_drawing_seeds() {
    for (name, s) in seeds("arrangement") {
        let a = io::parse_arrangement(&s).unwrap();
        assert_eq!(a.planarize().is_ok(), !name.contains("repeat"), "{name}");
    }
    for (name, s) in seeds("drawing") {
        io::parse_drawing(&s).unwrap().planarize().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn geometry_seeds() {
    for (name, s) in seeds("rects") {
        assert_eq!(io::parse_rects(&s).is_ok(), !name.contains("zero_den"), "{name}");
    }
    for (name, s) in seeds("boxes") {
        assert_eq!(io::parse_boxes(&s).is_ok(), !name.contains("mismatch"), "{name}");
    }
    for (name, s) in seeds("realization") {
        io::parse_realization(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    for (name, s) in seeds("rational") {
        assert_eq!(io::parse_rational_str(&s).is_ok(), !name.contains("zero_den"), "{name}");
    }
}

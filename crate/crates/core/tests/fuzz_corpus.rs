use std::path::PathBuf;

use hlcut::report::{parse_reports, write_reports};
use hlcut::{validate_trace, ConstructionTrace, Graph};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            let text = std::fs::read_to_string(&path).unwrap();
            (path, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn graph_text_seeds_parse_and_round_trip() {
    for (path, text) in seeds("graph_text") {
        let g = Graph::from_text(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(Graph::from_text(&g.to_text()).unwrap(), g);
    }
}

#[test]
fn trace_seeds_validate() {
    for (path, text) in seeds("trace_json") {
        let trace = ConstructionTrace::from_json(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(trace.to_json(), text, "{}", path.display());
        let g = validate_trace(&trace).unwrap();
        assert_eq!(g.regular_degree(), Some(trace.depth()));
    }
}

#[test]
fn report_seeds_round_trip() {
    for (path, text) in seeds("reports") {
        let reports = parse_reports(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(write_reports(&reports), text, "{}", path.display());
    }
}

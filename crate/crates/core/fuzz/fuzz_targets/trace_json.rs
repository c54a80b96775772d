#![no_main]

use hlcut::{validate_trace, ConstructionTrace};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(trace) = ConstructionTrace::from_json(text) {
        assert_eq!(ConstructionTrace::from_json(&trace.to_json()).unwrap(), trace);
        if let Ok(g) = validate_trace(&trace) {
            assert_eq!(g.regular_degree(), Some(trace.depth()));
        }
    }
});

#![no_main]

use hlcut::Graph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = Graph::from_text(text) {
        let again = g.to_text();
        assert_eq!(Graph::from_text(&again).unwrap(), g);
    }
});

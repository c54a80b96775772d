#![no_main]

use hlcut::report::{parse_reports, write_reports};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(reports) = parse_reports(text) {
        assert_eq!(parse_reports(&write_reports(&reports)).unwrap(), reports);
    }
});

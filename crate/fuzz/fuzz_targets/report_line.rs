#![no_main]

use dualcheck_cli::{parse_line, Report};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(line) = parse_line(text) {
            let again = serde_json::to_string(&line).unwrap();
            assert_eq!(parse_line(&again).unwrap(), line);
        }
        if let Ok(report) = Report::parse_structured(text) {
            assert_eq!(Report::parse_structured(&report.to_structured()).unwrap(), report);
        }
    }
});

#![no_main]

use dualcheck_cli::parse_group_text;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(g) = parse_group_text("fuzz", text) {
            // a validated table survives a print/parse cycle
            let again = parse_group_text("fuzz", &g.to_table_text()).unwrap();
            assert_eq!(again.table_rows(), g.table_rows());
        }
    }
});

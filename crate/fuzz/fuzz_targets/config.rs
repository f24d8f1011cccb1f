#![no_main]

use dualcheck_cli::SuiteConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(cfg) = SuiteConfig::from_toml(text) {
            let again = toml::to_string(&cfg).unwrap();
            assert_eq!(SuiteConfig::from_toml(&again).unwrap(), cfg);
        }
    }
});

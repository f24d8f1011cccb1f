#![no_main]

use dualcheck::arith::Cyclotomic;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(c) = text.parse::<Cyclotomic>() {
            let back: Cyclotomic = c.to_literal().parse().unwrap();
            assert_eq!(back, c);
        }
    }
});

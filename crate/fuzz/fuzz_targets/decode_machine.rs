#![no_main]

use ctt_core::machines::{decode_machine, encode_machine};
use libfuzzer_sys::fuzz_target;

// Decoding accepts canonical codes only: encode is its exact inverse.
fuzz_target!(|data: &[u8]| {
    let Ok(code) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = decode_machine(code) {
        assert_eq!(encode_machine(&spec).as_str(), code);
    }
});

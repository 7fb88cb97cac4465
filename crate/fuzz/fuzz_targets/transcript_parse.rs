#![no_main]

use ctt_core::dialogue::{parse_transcript, write_transcript};
use libfuzzer_sys::fuzz_target;

// Only canonical files parse, so a parsed file re-renders byte for byte.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = parse_transcript(text) {
        assert_eq!(write_transcript(&doc), text);
    }
});

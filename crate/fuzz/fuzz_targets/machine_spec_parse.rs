#![no_main]

use ctt_core::machines::{parse_machine, write_machine};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(machine) = parse_machine(text) {
        let rendered = write_machine(&machine);
        assert_eq!(parse_machine(&rendered).as_ref(), Ok(&machine));
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use mumford_tame::pipeline::{selected_rows, RowSelection};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(sel) = s.parse::<RowSelection>() {
        assert!(selected_rows(&sel).len() <= 9);
    }
});

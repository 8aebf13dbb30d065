#![no_main]

use libfuzzer_sys::fuzz_target;
use mumford_tame::galois::SpecFile;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = SpecFile::from_json(s);
});

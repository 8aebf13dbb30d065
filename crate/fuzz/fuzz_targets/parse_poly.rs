#![no_main]

use libfuzzer_sys::fuzz_target;
use mumford_tame::poly::IntPoly;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = s.parse::<IntPoly>() {
        let back: IntPoly = f.to_string().parse().expect("round trip");
        assert_eq!(back, f);
    }
});

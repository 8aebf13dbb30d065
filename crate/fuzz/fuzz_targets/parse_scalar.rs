#![no_main]

use libfuzzer_sys::fuzz_target;
use mumford_tame::padic::{valuation, ExactScalar};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = s.parse::<ExactScalar>() {
        // display form parses back to the same value
        let back: ExactScalar = x.to_string().parse().expect("round trip");
        assert_eq!(back, x);
        let _ = valuation(&x, 3);
    }
});

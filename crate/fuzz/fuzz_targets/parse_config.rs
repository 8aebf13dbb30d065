#![no_main]

use libfuzzer_sys::fuzz_target;
use mumford_tame::whittaker::{good_position_check, PointConfiguration};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = PointConfiguration::from_json(s) {
        if cfg.g() <= 4 {
            let _ = good_position_check(&cfg);
        }
    }
});

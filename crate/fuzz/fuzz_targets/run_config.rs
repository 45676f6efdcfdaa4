#![no_main]
use std::path::Path;

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(cfg) = ss_cli::RunConfig::parse(text, Path::new("/fuzz")) {
            let _ = cfg.sim_config();
        }
    }
});

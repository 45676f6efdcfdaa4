#![no_main]
use std::path::Path;

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 1 << 16 {
        return;
    }
    // rejections are fine, panics are not
    let _ = ss_cli::io::parse_profile(data, Path::new("fuzz.csv"), 1e-12);
});

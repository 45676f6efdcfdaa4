#![no_main]
use std::path::Path;

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 1 << 16 {
        return;
    }
    let _ = ss_cli::io::parse_reflection(data, Path::new("fuzz.csv"));
});

#![no_main]

use jacob_ladder::cli::config::parse_number_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_number_list(text);
    }
});

#![no_main]

use jacob_ladder::cli::config::parse_config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(settings) = parse_config(text) {
            // whatever parses must survive a canonical round trip
            let again = parse_config(&settings.canonical()).expect("canonical form reparses");
            assert_eq!(again.canonical(), settings.canonical());
        }
    }
});

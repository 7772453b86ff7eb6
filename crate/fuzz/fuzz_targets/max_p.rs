#![no_main]

use libfuzzer_sys::fuzz_target;
use markoff_cli::args::parse_max_p;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_max_p(Some(s));
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use markoff_cli::args::parse_prime;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = parse_prime(s) {
            assert!(p > 5);
        }
    }
});

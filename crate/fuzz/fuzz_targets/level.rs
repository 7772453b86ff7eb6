#![no_main]

use libfuzzer_sys::fuzz_target;
use markoff_cli::args::parse_level;
use markoff_core::ff::PrimeField;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(level) = parse_level(s) {
        // 11 has √5, 13 does not
        for p in [11, 13] {
            let field = PrimeField::new(p).unwrap();
            if let Ok(k) = level.resolve(&field) {
                assert!(k.value() < p as u32);
            }
        }
    }
});

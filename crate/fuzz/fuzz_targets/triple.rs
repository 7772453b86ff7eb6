#![no_main]

use libfuzzer_sys::fuzz_target;
use markoff_cli::args::{parse_triple, triple_in_field};
use markoff_core::ff::PrimeField;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(coords) = parse_triple(s) {
        let field = PrimeField::new(7).unwrap();
        if let Ok(t) = triple_in_field(&field, coords) {
            assert_eq!(t.x.value() as i64, coords[0]);
        }
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use markoff_cli::args::prime_range;

fuzz_target!(|data: &[u8]| {
    if data.len() < 4 {
        return;
    }
    let pmin = u16::from_le_bytes([data[0], data[1]]) as u64;
    let pmax = u16::from_le_bytes([data[2], data[3]]) as u64;
    if let Ok(primes) = prime_range(pmin, pmax) {
        assert!(primes.windows(2).all(|w| w[0] < w[1]));
        assert!(primes.iter().all(|&p| pmin <= p && p <= pmax));
    }
});

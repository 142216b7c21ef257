#![no_main]

use libfuzzer_sys::fuzz_target;
use quatinv::bench::{parse_sizes, MAX_SIZES};

fuzz_target!(|s: &str| {
    if let Ok(sizes) = parse_sizes(s) {
        assert!(!sizes.is_empty() && sizes.len() <= MAX_SIZES);
        assert!(sizes.iter().all(|&n| n > 0));
    }
});

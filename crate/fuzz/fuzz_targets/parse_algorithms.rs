#![no_main]

use libfuzzer_sys::fuzz_target;
use quatinv::bench::parse_algorithms;
use quatinv::invert::AlgorithmId;

fuzz_target!(|s: &str| {
    if let Ok(algs) = parse_algorithms(s) {
        assert!(!algs.is_empty() && !algs.contains(&AlgorithmId::Phi2Oracle));
    }
});

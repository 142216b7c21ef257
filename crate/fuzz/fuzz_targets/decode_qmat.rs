#![no_main]

use libfuzzer_sys::fuzz_target;
use quatinv::io::{decode_qmat, encode_qmat};

fuzz_target!(|data: &[u8]| {
    if let Ok(z) = decode_qmat(data) {
        // Anything accepted must re-encode to the same bytes.
        assert_eq!(encode_qmat(&z).unwrap(), data);
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use quatinv::io::{read_csv, write_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(records) = read_csv(data) {
        let mut out = Vec::new();
        write_csv(&mut out, &records).unwrap();
        assert_eq!(read_csv(out.as_slice()).unwrap().len(), records.len());
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use zxsigma::text::{parse_matrix, print_matrix};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_matrix(src) {
        assert_eq!(parse_matrix(&print_matrix(&m)).unwrap(), m);
    }
});

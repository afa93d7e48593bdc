#![no_main]

use libfuzzer_sys::fuzz_target;
use zxsigma::binomial::{parse_binomials, print_binomials};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(s) = parse_binomials(src) {
        assert_eq!(parse_binomials(&print_binomials(&s)).unwrap(), s);
    }
});

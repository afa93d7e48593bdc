#![no_main]

use libfuzzer_sys::fuzz_target;
use zxsigma::laurent::{parse_laurent, print_laurent};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(s) = parse_laurent(src) {
        assert_eq!(parse_laurent(&print_laurent(&s)).unwrap(), s);
    }
});

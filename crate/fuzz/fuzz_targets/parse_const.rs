#![no_main]

use libfuzzer_sys::fuzz_target;
use zxsigma::constants::parse_const;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_const(src) {
        assert_eq!(parse_const(&c.to_string()).unwrap(), c);
    }
});

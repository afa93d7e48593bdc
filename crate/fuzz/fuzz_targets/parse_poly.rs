#![no_main]

use libfuzzer_sys::fuzz_target;
use zxsigma::text::parse_poly;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_poly(src) {
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }
});

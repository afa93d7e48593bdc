#![no_main]

use libfuzzer_sys::fuzz_target;
use zxsigma::binomial::{parse_components, print_components};
use zxsigma::constants::SigmaConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(comps) = parse_components(src, SigmaConfig::Identity) {
        if let Some(n) = comps.first().map(|c| c.n) {
            let text = print_components(n, &comps);
            assert_eq!(parse_components(&text, SigmaConfig::Identity).unwrap(), comps);
        }
    }
});

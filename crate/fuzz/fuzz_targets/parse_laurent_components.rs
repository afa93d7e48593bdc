#![no_main]

use libfuzzer_sys::fuzz_target;
use zxsigma::constants::SigmaConfig;
use zxsigma::laurent::{parse_components, print_components};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    // Bound the work done by the characteristic set computation per component.
    if src.len() > 512 {
        return;
    }
    for s in [SigmaConfig::Identity, SigmaConfig::Conjugation] {
        if let Ok(comps) = parse_components(src, s) {
            if let Some(n) = comps.first().map(|c| c.n) {
                let text = print_components(n, &comps);
                assert_eq!(parse_components(&text, s).unwrap(), comps);
            }
        }
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use ltgn_core::spectra::{parse_potential_spec, parse_two_column};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_potential_spec(text) {
        // File parameters are fed back in as inline sample text.
        for d in [1, 3] {
            let _ = spec.build(d, parse_two_column);
        }
    }
});

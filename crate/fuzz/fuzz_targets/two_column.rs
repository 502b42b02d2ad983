#![no_main]

use libfuzzer_sys::fuzz_target;
use ltgn_core::spectra::{parse_two_column, Potential, PotentialKind};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = parse_two_column(text) {
        assert!(s.grid.windows(2).all(|w| w[1] > w[0]));
        if let Ok(v) = Potential::new(PotentialKind::Sampled(s), 1) {
            let _ = v.value(0.0);
            let _ = v.min_value();
        }
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use ltgn_core::spectra::parse_samples_json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = parse_samples_json(text) {
        assert_eq!(s.grid.len(), s.values.len());
        let _ = s.eval(s.start() - 1.0);
        let _ = s.eval(0.5 * (s.start() + s.end()));
    }
});

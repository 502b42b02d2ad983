#![no_main]

use libfuzzer_sys::fuzz_target;
use ltgn_core::mixedstate::MixedState;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(state) = MixedState::from_json(text) {
        let _ = state.density();
        let _ = state.orthonormality_defect();
        let again = serde_json::to_string(&state.to_file()).expect("serializes");
        assert_eq!(MixedState::from_json(&again).expect("round trip"), state);
    }
});

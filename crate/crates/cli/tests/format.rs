use ltgn_cli::config::parse_config;
use ltgn_cli::report::{fmt_f64, to_csv, to_json};
use proptest::prelude::*;
use serde_json::{json, Map, Value};

proptest! {
    #[test]
    fn floats_round_trip_through_json(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        let text = to_json(&json!({ "x": x }));
        let back: Value = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back["x"].as_f64().unwrap(), x);
    }

    #[test]
    fn floats_round_trip_through_csv(xs in prop::collection::vec(-1e300f64..1e300, 1..8)) {
        let rows: Vec<Map<String, Value>> = xs.iter().map(|x| {
            let mut m = Map::new();
            m.insert("x".into(), json!(x));
            m
        }).collect();
        let text = to_csv(&rows);
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let got: Vec<f64> = r.records().map(|rec| rec.unwrap()[0].parse().unwrap()).collect();
        prop_assert_eq!(got, xs);
    }

    #[test]
    fn config_parser_never_panics(text in "(?s).{0,300}") {
        let _ = parse_config(&text);
    }

    #[test]
    fn config_keys_normalize(key in "[a-z][a-z_]{0,12}", value in "[0-9a-z.,]{1,10}") {
        let entries = parse_config(&format!("# run\n{key} = \"{value}\"\n")).unwrap();
        prop_assert_eq!(entries.len(), 1);
        prop_assert_eq!(&entries[0].key, &key.replace('_', "-"));
        prop_assert_eq!(&entries[0].value, &value);
    }
}

/// Every checked-in fuzz seed goes through the same entry points as the
/// fuzz targets, so the seeds double as regression inputs on stable.
#[test]
fn fuzz_seeds_replay() {
    use ltgn_core::mixedstate::MixedState;
    use ltgn_core::spectra::{parse_potential_spec, parse_samples_json, parse_two_column};

    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    let mut seen = 0;
    for target in ["potential_spec", "two_column", "potential_json", "mixed_state_json", "config_file"] {
        let dir = root.join(target);
        let entries = std::fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {e}", dir.display()));
        for entry in entries {
            let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
            seen += 1;
            match target {
                "potential_spec" => {
                    if let Ok(spec) = parse_potential_spec(&text) {
                        let _ = spec.build(1, parse_two_column);
                    }
                }
                "two_column" => {
                    let _ = parse_two_column(&text);
                }
                "potential_json" => {
                    let _ = parse_samples_json(&text);
                }
                "mixed_state_json" => {
                    if let Ok(s) = MixedState::from_json(&text) {
                        let again = serde_json::to_string(&s.to_file()).unwrap();
                        assert_eq!(MixedState::from_json(&again).unwrap(), s);
                    }
                }
                _ => {
                    let _ = parse_config(&text);
                }
            }
        }
    }
    assert!(seen >= 25, "only {seen} seeds");
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ltgn"));
    c.env_remove("LTGN_OUT_DIR");
    c
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn report(dir: &Path, args: &[&str], file: &str) -> Value {
    let out = run_in(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&std::fs::read_to_string(dir.join(file)).unwrap()).unwrap()
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas/report.schema.json");
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

/// Quick configurations of every subcommand.
const FAST: [&[&str]; 13] = [
    &["constants", "--gamma", "2", "--d", "1"],
    &["spectrum", "--potential", "sech2:c=2,a=1", "--n-eigs", "2", "--n-grid", "400"],
    &["trace-verify", "--potential", "harmonic:A=1,B=0", "--family", "exp"],
    &["weyl-sweep", "--gamma", "2", "--eps", "1,0.1"],
    &["harmonic-q", "--gamma", "3", "--points", "5"],
    &["gn-solve", "--family", "standard", "--gamma", "1.5"],
    &["ck-check", "--law", "boltzmann", "--trials", "50"],
    &["ortho-check", "--trials", "10", "--n-grid", "200"],
    &["evolve", "--final-time", "1", "--dt", "0.02", "--n-grid", "200"],
    &["cn-mono", "--n-max", "1"],
    &["interp-check", "--pair", "logsob", "--corpus", "2", "--n-grid", "999"],
    &["logsob", "--d", "1"],
    &["gt-study", "--grids", "99,199"],
];

#[test]
fn constants_example() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(dir.path(), &["constants", "--gamma", "2", "--d", "1"], "constants.json");
    assert!((r["results"]["sharp_constant"].as_f64().unwrap() - 0.25).abs() < 1e-15);
    assert_eq!(r["inputs"]["gamma"].as_f64(), Some(2.0));
    assert_eq!(r["seed"], 0);
}

#[test]
fn weyl_sweep_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["weyl-sweep", "--gamma", "2", "--d", "1", "--eps", "1,0.1,0.01", "--format", "csv"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("weyl-sweep.csv")).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let header = rows.headers().unwrap().clone();
    let col = header.iter().position(|h| h == "ratio").unwrap();
    let ratios: Vec<f64> = rows.records().map(|r| r.unwrap()[col].parse().unwrap()).collect();
    assert_eq!(ratios.len(), 3);
    assert!(ratios.windows(2).all(|p| p[1] > p[0]));
    assert!(ratios[2] >= 0.98 && ratios[2] <= 1.0);
}

#[test]
fn trace_verify_example() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(dir.path(), &["trace-verify", "--potential", "harmonic:A=1,B=0", "--family", "exp", "--d", "1"], "trace-verify.json");
    let ratio = r["results"]["ratio"].as_f64().unwrap();
    assert!((ratio - 1.0 / 1f64.sinh()).abs() < 1e-9, "{ratio}");
    assert!((ratio - 0.850918).abs() < 1e-6);
}

#[test]
fn every_report_matches_the_schema() {
    let v = schema();
    let dir = tempfile::tempdir().unwrap();
    for args in FAST {
        let name = args[0];
        let r = report(dir.path(), args, &format!("{name}.json"));
        let errors: Vec<String> = v.iter_errors(&r).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{name}: {errors:?}");
        assert_eq!(r["command"], name);
        assert!(r["all_checks_passed"].as_bool().unwrap(), "{name}: {}", r["checks"]);
    }
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in FAST {
        let mut texts = Vec::new();
        for k in 0..2 {
            let path = dir.path().join(format!("{}-{k}.json", args[0]));
            let mut a: Vec<&str> = args.to_vec();
            let p = path.to_str().unwrap();
            a.extend(["--out", p, "--seed", "17"]);
            let out = run_in(dir.path(), &a);
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            texts.push(std::fs::read(&path).unwrap());
            assert!(dir.path().join(format!("{}-{k}.json.meta.json", args[0])).exists());
        }
        assert_eq!(texts[0], texts[1], "{}", args[0]);
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let get = |t: &str| {
        let out = run_in(dir.path(), &["ck-check", "--law", "fermi", "--trials", "300", "--threads", t, "--out", "-"]);
        assert!(out.status.success());
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v["results"].clone()
    };
    assert_eq!(get("1"), get("4"));
}

#[test]
fn seeds_change_randomized_results() {
    let dir = tempfile::tempdir().unwrap();
    let get = |s: &str| {
        let out = run_in(dir.path(), &["ck-check", "--law", "fermi", "--trials", "50", "--seed", s, "--out", "-"]);
        serde_json::from_slice::<Value>(&out.stdout).unwrap()["results"]["suite"]["min_slack"].as_f64().unwrap()
    };
    assert_ne!(get("1"), get("2"));
}

#[test]
fn floats_carry_seventeen_digits() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["constants", "--gamma", "1.5", "--out", "-"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().find(|l| l.contains("\"sharp_constant\"")).unwrap();
    let num = line.split(':').nth(1).unwrap().trim().trim_end_matches(',');
    let mantissa = num.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{num}");
    assert_eq!(num.parse::<f64>().unwrap(), 1.0 / std::f64::consts::PI);
}

#[test]
fn config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# trace run\ncommand = trace-verify\npotential = harmonic:A=1,B=0\nfamily = exp\nn_grid = 4000\n").unwrap();
    let a = run_in(dir.path(), &["--config", cfg.to_str().unwrap(), "--out", "a.json"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = run_in(dir.path(), &["trace-verify", "--potential", "harmonic:A=1,B=0", "--family", "exp", "--out", "b.json"]);
    assert!(b.status.success());
    assert_eq!(std::fs::read(dir.path().join("a.json")).unwrap(), std::fs::read(dir.path().join("b.json")).unwrap());
    std::fs::write(&cfg, "command = trace-verify\nfamily exp\n").unwrap();
    let bad = run_in(dir.path(), &["--config", cfg.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().current_dir(dir.path()).env("LTGN_OUT_DIR", dir.path().join("reports")).args(["logsob", "--d", "1", "--format", "csv"]).output().unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("reports/logsob.csv")).unwrap();
    assert!(text.starts_with("closed,d,optimal_gap,optimal_variance,value\n"), "{text}");
}

#[test]
fn plot_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["harmonic-q", "--gamma", "3", "--s", "0.5,1,2", "--plot", "q.dat"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("q.dat")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# s q");
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[2].split_whitespace().count(), 2);
    let no_plot = run_in(dir.path(), &["logsob", "--plot", "x.dat"]);
    assert_eq!(no_plot.status.code(), Some(2));
}

#[test]
fn validation_errors_exit_two_with_json() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["constants", "--gamma", "inf"][..],
        &["constants", "--gamma", "2", "--d", "0"],
        &["spectrum", "--potential", "harmonic:A=1,Q=2"],
        &["spectrum", "--potential", "sampled:file=missing.txt"],
        &["weyl-sweep", "--gamma", "2", "--eps", "0.1,1"],
        &["trace-verify", "--potential", "harmonic:A=1", "--family", "power"],
        &["interp-check", "--pair", "standard", "--gamma", "2"],
        &["ck-check", "--law", "power", "--m", "0.5", "--coefficient", "1"],
        &["evolve", "--dt", "1"],
        &["constants", "--gamma", "2", "--threads", "0"],
        &["no-such-command"],
    ] {
        let out = run_in(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        let last: Value = serde_json::from_str(err.lines().last().unwrap()).unwrap();
        assert_eq!(last["status"], "error");
        assert_eq!(last["exit_code"], 2);
    }
}

#[test]
fn malformed_state_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("state.json");
    std::fs::write(&state, r#"{"occupations":[0.5],"mesh":{"start":-1,"step":0.5,"points":5},"wavefunctions":[0,1,0,0,0]}"#).unwrap();
    let out = run_in(dir.path(), &["interp-check", "--pair", "logsob", "--state", state.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numeric_failures_map_to_three() {
    let e = ltgn_cli::CliError::Core(ltgn_core::Error::numeric("stalled", 1e-3));
    assert_eq!(e.exit_code(), 3);
    let diag: Value = serde_json::from_str(&e.diagnostic(Some("gn-solve"))).unwrap();
    assert_eq!(diag["residual"].as_f64(), Some(1e-3));
    assert_eq!(diag["kind"], "numeric");
}

#[test]
fn sampled_potential_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let xs: Vec<f64> = (0..=400).map(|i| -8.0 + 16.0 * i as f64 / 400.0).collect();
    let two: String = xs.iter().map(|x| format!("{x} {}\n", x * x)).collect();
    std::fs::write(dir.path().join("v.txt"), two).unwrap();
    let json = serde_json::json!({ "x": xs, "v": xs.iter().map(|x| x * x).collect::<Vec<_>>() });
    std::fs::write(dir.path().join("v.json"), json.to_string()).unwrap();
    for f in ["v.txt", "v.json"] {
        let spec = format!("sampled:file={f}");
        let out = run_in(dir.path(), &["spectrum", "--potential", &spec, "--n-eigs", "3", "--n-grid", "1600", "--out", "-"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        let e = v["results"]["eigenvalues"].as_array().unwrap();
        for (k, level) in e.iter().enumerate() {
            assert!((level.as_f64().unwrap() - (2 * k + 1) as f64).abs() < 2e-2, "{f} {k} {level}");
        }
    }
}

#[test]
fn help_and_version_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    for a in ["--help", "--version"] {
        assert_eq!(run_in(dir.path(), &[a]).status.code(), Some(0));
    }
}

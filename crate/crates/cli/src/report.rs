//! Report envelope and its JSON, CSV and plot-text encodings.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{Map, Value};

pub const SCHEMA_ID: &str = "ltgn-report/1";

/// A named check with its outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

/// Columns of plot-ready text.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Plot {
    pub columns: Vec<String>,
    pub data: Vec<Vec<f64>>,
}

/// Everything a subcommand produces.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub results: Value,
    pub rows: Vec<Map<String, Value>>,
    pub checks: Vec<Check>,
    pub summary: Vec<String>,
    pub plot: Option<Plot>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub version: &'static str,
    pub seed: u64,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub all_checks_passed: bool,
    pub rows: Vec<Map<String, Value>>,
}

impl Report {
    pub fn new(command: &str, seed: u64, inputs: Value, out: &Outcome) -> Self {
        Self {
            schema: SCHEMA_ID,
            command: command.into(),
            version: env!("CARGO_PKG_VERSION"),
            seed,
            inputs,
            results: out.results.clone(),
            all_checks_passed: out.checks.iter().all(|c| c.passed),
            checks: out.checks.clone(),
            rows: out.rows.clone(),
        }
    }
}

/// Formats a double with 17 significant digits, enough to round-trip.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Pretty JSON whose floats carry 17 significant digits.
struct SigFormatter<'a>(PrettyFormatter<'a>);

impl Formatter for SigFormatter<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_f64(value).as_bytes())
    }
    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("report values serialize");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => fmt_f64(n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Flat rows with a header built from the keys in order of first appearance.
pub fn to_csv(rows: &[Map<String, Value>]) -> String {
    let mut header: Vec<&str> = Vec::new();
    for r in rows {
        for k in r.keys() {
            if !header.contains(&k.as_str()) {
                header.push(k);
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for r in rows {
        w.write_record(header.iter().map(|k| r.get(*k).map(cell).unwrap_or_default())).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv of UTF-8 cells")
}

pub fn to_plot_text(p: &Plot) -> String {
    let mut s = format!("# {}\n", p.columns.join(" "));
    for row in &p.data {
        let line: Vec<String> = row.iter().map(|x| fmt_f64(*x)).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

/// `<path>.meta.json`: the non-deterministic facts about a run.
pub fn meta_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

pub fn meta_json(command: &str, argv: &[String], threads: usize) -> String {
    let now = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_millis() as u64).unwrap_or(0);
    let v = serde_json::json!({
        "command": command,
        "created_unix_ms": now,
        "argv": argv,
        "threads": threads,
    });
    to_json(&v)
}

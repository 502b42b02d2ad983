//! Driver behind the `ltgn` binary: argument parsing, config files and
//! report writing around the experiments in `ltgn-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, ValueEnum};
use serde::Serialize;
use serde_json::json;

pub use commands::Command;
pub use error::CliError;
use report::Report;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "LTGN_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Report path; `-` prints the report on stdout instead of the summary.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the randomized suites; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Also write plot-ready columns to this path.
    #[arg(long, global = true)]
    pub plot: Option<PathBuf>,
    /// Suppress the human summary.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Run file of `key = value` lines using the flag names.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Parser, Debug, Clone)]
#[command(name = "ltgn", version, about = "Numerical experiments on Lieb–Thirring and Gagliardo–Nirenberg inequalities")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

fn report_path(g: &Global, command: &str, out_dir: Option<&Path>) -> Option<PathBuf> {
    match &g.out {
        Some(p) if p.as_os_str() == "-" => None,
        Some(p) => Some(p.clone()),
        None => Some(out_dir.unwrap_or(Path::new(".")).join(format!("{command}.{}", g.format.ext()))),
    }
}

/// Builds the report text for a parsed command line.
pub fn execute(cli: &Cli) -> Result<(Report, report::Outcome), CliError> {
    if cli.global.threads == 0 || cli.global.threads > 1024 {
        return Err(CliError::Validation("--threads must be in 1..=1024".into()));
    }
    if cli.global.plot.is_some() && !cli.command.has_plot() {
        return Err(CliError::Validation(format!("`{}` has no plot output", cli.command.name())));
    }
    let ctx = commands::Ctx { seed: cli.global.seed, threads: cli.global.threads };
    let outcome = cli.command.run(&ctx)?;
    let mut inputs = cli.command.inputs();
    if let Some(m) = inputs.as_object_mut() {
        m.insert("format".into(), json!(cli.global.format));
    }
    let rep = Report::new(cli.command.name(), cli.global.seed, inputs, &outcome);
    Ok((rep, outcome))
}

pub fn render(rep: &Report, format: Format) -> String {
    match format {
        Format::Json => report::to_json(rep),
        Format::Csv => report::to_csv(&rep.rows),
    }
}

/// Full run: returns the process exit status.
pub fn run(args: Vec<String>, out_dir: Option<&Path>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let argv = args.clone();
    let args = match config::expand_args(args, &commands::SUBCOMMANDS) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.diagnostic(None));
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(stdout, "{e}");
            } else {
                let _ = write!(stderr, "{e}");
                let diag = CliError::Validation(e.kind().to_string());
                let _ = writeln!(stderr, "{}", diag.diagnostic(None));
            }
            return code;
        }
    };
    let name = cli.command.name();
    match write_outputs(&cli, &argv, out_dir, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.diagnostic(Some(name)));
            e.exit_code()
        }
    }
}

fn write_outputs(cli: &Cli, argv: &[String], out_dir: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (rep, outcome) = execute(cli)?;
    let text = render(&rep, cli.global.format);
    let g = &cli.global;
    match report_path(g, &rep.command, out_dir) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(&path, &text)?;
            std::fs::write(report::meta_path(&path), report::meta_json(&rep.command, argv, g.threads))?;
            if !g.quiet {
                writeln!(stdout, "{}", rep.command)?;
                for line in &outcome.summary {
                    writeln!(stdout, "  {line}")?;
                }
                for c in &outcome.checks {
                    writeln!(stdout, "  [{}] {} {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail)?;
                }
                writeln!(stdout, "  report: {}", path.display())?;
            }
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    if let Some(p) = &g.plot {
        if let Some(plot) = &outcome.plot {
            std::fs::write(p, report::to_plot_text(plot))?;
        }
    }
    Ok(())
}

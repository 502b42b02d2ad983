//! Subcommands. Each validates its arguments, runs one experiment and returns
//! an [`Outcome`]; writing files is left to the caller.

use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use ltgn_core::constants::{self, Family, SemiclassicalParams};
use ltgn_core::groundstate::{gn_constant, ground_state_for, one_bound_state_from};
use ltgn_core::interpolation::{corpus_check, gaussian, legendre_pair, random_corpus, scaled_form_check, sharp_lsi_gap, single_function_check, system_interp_check, log_sobolev_constant_check};
use ltgn_core::mixedstate::{ck_lower_bound, ck_suite, cn_estimate, evolve_check, ortho_suite, to_complex, Mesh, MixedState, OccupationLaw};
use ltgn_core::riesz::{harmonic_q, verify_trace_inequality, weight_pair, weyl_sweep, SolverConfig, WeightFamily};
use ltgn_core::spectra::{box_spectrum, dirichlet_solve, discrete_gt_study, harmonic_spectrum, parse_potential_spec, parse_samples_json, parse_two_column, radial_solve, Potential, PotentialKind, Sampled, Spectrum};

use crate::error::CliError;
use crate::report::{Check, Outcome, Plot};

/// Largest grid any command accepts.
pub const MAX_GRID: usize = 1 << 22;
/// Largest trial count any command accepts.
pub const MAX_TRIALS: usize = 1_000_000;
/// Largest dimension any command accepts.
pub const MAX_DIM: u32 = 64;

type Res<T> = Result<T, CliError>;

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Sharp semiclassical constant, κ pairs and interpolation constants.
    Constants(ConstantsArgs),
    /// Eigenvalues of −Δ + V for a potential in the mini-language.
    Spectrum(SpectrumArgs),
    /// Both sides of a trace inequality Σ F(λᵢ) ≤ ∫ G(V) and their ratio.
    TraceVerify(TraceArgs),
    /// Box-potential ratios along a decreasing ε list.
    WeylSweep(WeylArgs),
    /// The harmonic ratio q(s) on a grid of s.
    HarmonicQ(HarmonicQArgs),
    /// Ground state, Gagliardo–Nirenberg constant and one-bound-state check.
    GnSolve(GnArgs),
    /// Csiszár–Kullback lower bound against the Bregman sum.
    CkCheck(CkArgs),
    /// Energy of orthogonal mixings of eigenfunctions against Σ νᵢλᵢ.
    OrthoCheck(OrthoArgs),
    /// Free-energy conservation under Schrödinger evolution.
    Evolve(EvolveArgs),
    /// Lower estimates of the n-bound-state constants.
    CnMono(CnArgs),
    /// Interpolation inequalities for systems and their scaled forms.
    InterpCheck(InterpArgs),
    /// The one-bound-state log-Sobolev constant over Gaussians.
    Logsob(LogsobArgs),
    /// Discretized heat trace against its continuum bound over grid refinements.
    GtStudy(GtArgs),
}

pub const SUBCOMMANDS: [&str; 13] = [
    "constants",
    "spectrum",
    "trace-verify",
    "weyl-sweep",
    "harmonic-q",
    "gn-solve",
    "ck-check",
    "ortho-check",
    "evolve",
    "cn-mono",
    "interp-check",
    "logsob",
    "gt-study",
];

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Constants(_) => "constants",
            Command::Spectrum(_) => "spectrum",
            Command::TraceVerify(_) => "trace-verify",
            Command::WeylSweep(_) => "weyl-sweep",
            Command::HarmonicQ(_) => "harmonic-q",
            Command::GnSolve(_) => "gn-solve",
            Command::CkCheck(_) => "ck-check",
            Command::OrthoCheck(_) => "ortho-check",
            Command::Evolve(_) => "evolve",
            Command::CnMono(_) => "cn-mono",
            Command::InterpCheck(_) => "interp-check",
            Command::Logsob(_) => "logsob",
            Command::GtStudy(_) => "gt-study",
        }
    }

    /// Whether the command can emit plot columns.
    pub fn has_plot(&self) -> bool {
        matches!(
            self,
            Command::Spectrum(_) | Command::WeylSweep(_) | Command::HarmonicQ(_) | Command::GnSolve(_) | Command::Evolve(_) | Command::CnMono(_)
        )
    }

    /// The command's own arguments as JSON, for the input echo.
    pub fn inputs(&self) -> Value {
        let v = match self {
            Command::Constants(a) => serde_json::to_value(a),
            Command::Spectrum(a) => serde_json::to_value(a),
            Command::TraceVerify(a) => serde_json::to_value(a),
            Command::WeylSweep(a) => serde_json::to_value(a),
            Command::HarmonicQ(a) => serde_json::to_value(a),
            Command::GnSolve(a) => serde_json::to_value(a),
            Command::CkCheck(a) => serde_json::to_value(a),
            Command::OrthoCheck(a) => serde_json::to_value(a),
            Command::Evolve(a) => serde_json::to_value(a),
            Command::CnMono(a) => serde_json::to_value(a),
            Command::InterpCheck(a) => serde_json::to_value(a),
            Command::Logsob(a) => serde_json::to_value(a),
            Command::GtStudy(a) => serde_json::to_value(a),
        };
        v.expect("argument structs serialize")
    }

    pub fn run(&self, ctx: &Ctx) -> Res<Outcome> {
        match self {
            Command::Constants(a) => a.run(),
            Command::Spectrum(a) => a.run(),
            Command::TraceVerify(a) => a.run(),
            Command::WeylSweep(a) => a.run(),
            Command::HarmonicQ(a) => a.run(),
            Command::GnSolve(a) => a.run(),
            Command::CkCheck(a) => a.run(ctx),
            Command::OrthoCheck(a) => a.run(ctx),
            Command::Evolve(a) => a.run(),
            Command::CnMono(a) => a.run(),
            Command::InterpCheck(a) => a.run(ctx),
            Command::Logsob(a) => a.run(),
            Command::GtStudy(a) => a.run(),
        }
    }
}

/// Run-wide settings the experiments see.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub seed: u64,
    pub threads: usize,
}

// ---- validation helpers ----

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn finite(name: &str, x: f64) -> Res<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(bad(format!("--{name} must be finite, got {x}")))
    }
}

fn positive(name: &str, x: f64) -> Res<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(bad(format!("--{name} must be positive and finite, got {x}")))
    }
}

fn dim(d: u32) -> Res<u32> {
    if (1..=MAX_DIM).contains(&d) {
        Ok(d)
    } else {
        Err(bad(format!("--d must be in 1..={MAX_DIM}, got {d}")))
    }
}

fn count(name: &str, n: usize, lo: usize, hi: usize) -> Res<usize> {
    if (lo..=hi).contains(&n) {
        Ok(n)
    } else {
        Err(bad(format!("--{name} must be in {lo}..={hi}, got {n}")))
    }
}

fn need<T: Copy>(name: &str, v: Option<T>) -> Res<T> {
    v.ok_or_else(|| bad(format!("--{name} is required here")))
}

fn load_samples(path: &str) -> ltgn_core::Result<Sampled> {
    let text = std::fs::read_to_string(path)?;
    if path.ends_with(".json") {
        parse_samples_json(&text)
    } else {
        parse_two_column(&text)
    }
}

/// Parses and builds a potential from the mini-language, reading `file=` samples.
pub fn load_potential(spec: &str, d: u32) -> Res<Potential> {
    let parsed = parse_potential_spec(spec)?;
    Ok(parsed.build(d, load_samples)?)
}

fn row(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn sci(x: f64) -> String {
    format!("{x:.9e}")
}

// ---- constants ----

#[derive(Args, Debug, Clone, Serialize)]
pub struct ConstantsArgs {
    #[arg(long)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 0.5)]
    pub mass: f64,
    /// Lieb–Thirring constant for the standard interpolation constant; the
    /// sharp value is unknown in general, so it is never guessed.
    #[arg(long)]
    pub c_lt: Option<f64>,
}

impl ConstantsArgs {
    fn run(&self) -> Res<Outcome> {
        finite("gamma", self.gamma)?;
        dim(self.d)?;
        let params = SemiclassicalParams { gamma: self.gamma, d: self.d, hbar: self.hbar, mass: self.mass };
        params.validate()?;
        if let Some(c) = self.c_lt {
            positive("c-lt", c)?;
        }
        let (g, d) = (self.gamma, self.d);
        let mut values: Vec<(&str, ltgn_core::Result<f64>)> = vec![
            ("sharp_constant", constants::sharp_constant(&params)),
            ("sharp_constant_unit", constants::sharp_constant_unit(g, d)),
            ("semiclassical_lt_constant", constants::semiclassical_lt_constant(g, d)),
            ("q_standard", constants::q_standard(g, d)),
            ("kappa1_standard", constants::kappa_standard(g, d).map(|k| k.kappa1)),
            ("kappa2_standard", constants::kappa_standard(g, d).map(|k| k.kappa2)),
            ("q_dual", constants::q_dual(g, d)),
            ("kappa1_dual", constants::kappa_dual(g, d).map(|k| k.kappa1)),
            ("kappa2_dual", constants::kappa_dual(g, d).map(|k| k.kappa2)),
            ("dual_exponent_lhs", constants::dual_exponent_identity(g, d).map(|p| p.0)),
            ("dual_exponent_rhs", constants::dual_exponent_identity(g, d).map(|p| p.1)),
            ("interp_constant_dual", constants::interp_constant(Family::Dual, g, d, None)),
        ];
        values.push(match self.c_lt {
            Some(c) => ("interp_constant_standard", constants::interp_constant(Family::Standard, g, d, Some(c))),
            None => ("interp_constant_standard", Err(ltgn_core::Error::MissingInput("needs --c-lt".into()))),
        });
        let scale = match (&values[0].1, &values[1].1) {
            (Ok(a), Ok(b)) => Ok(a / b),
            _ => Err(ltgn_core::Error::domain("sharp constant unavailable")),
        };
        values.push(("scaling_factor", scale));
        if values.iter().all(|(_, v)| v.is_err()) {
            return Err(bad(format!("no constant is defined at gamma = {g}, d = {d}")));
        }
        let mut results = Map::new();
        let mut unavailable = Map::new();
        let mut out = Outcome::default();
        for (name, v) in &values {
            match v {
                Ok(x) => {
                    results.insert(name.to_string(), json!(x));
                    out.rows.push(row(&[("name", json!(name)), ("value", json!(x))]));
                    out.summary.push(format!("{name:<28} {}", sci(*x)));
                }
                Err(e) => {
                    results.insert(name.to_string(), Value::Null);
                    unavailable.insert(name.to_string(), json!(e.to_string()));
                    out.summary.push(format!("{name:<28} unavailable ({e})"));
                }
            }
        }
        results.insert("unavailable".into(), Value::Object(unavailable));
        results.insert("interp_constant_standard_conditional_on_c_lt".into(), json!(self.c_lt.is_some()));
        if let (Ok(a), Ok(b)) = (&values[9].1, &values[10].1) {
            out.checks.push(Check::new("dual_exponent_identity", (a - b).abs() <= 1e-12 * a.abs().max(1.0), format!("{} vs {}", sci(*a), sci(*b))));
        }
        out.results = Value::Object(results);
        Ok(out)
    }
}

// ---- spectrum ----

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpectrumArgs {
    /// `kind:key=val,...`; kinds box, harmonic, power, sech2, well, sampled.
    #[arg(long)]
    pub potential: String,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    #[arg(long, default_value_t = 20)]
    pub n_eigs: usize,
    #[arg(long, default_value_t = 2000)]
    pub n_grid: usize,
    /// Levels enumerated for closed-form spectra.
    #[arg(long, default_value_t = 200)]
    pub cutoff: u64,
}

fn solve_spectrum(v: &Potential, n_eigs: usize, n_grid: usize, cutoff: u64) -> Res<(Spectrum, &'static str, Option<Vec<f64>>)> {
    Ok(match v.kind {
        PotentialKind::Harmonic { a, b } => (harmonic_spectrum(a, b, v.d, cutoff)?, "closed_form", None),
        PotentialKind::Box { eps } => (box_spectrum(eps, v.d, cutoff)?, "closed_form", None),
        _ => {
            let solve = |n: usize| if v.d == 1 { dirichlet_solve(v, n_eigs, n) } else { radial_solve(v, n_eigs, n) };
            let fine = solve(n_grid)?;
            let coarse = solve(n_grid / 2)?;
            let (lf, lc) = (fine.levels(), coarse.levels());
            let err = lf.iter().zip(&lc).map(|(f, c)| (f - c).abs() / 3.0).collect();
            (fine, "finite_difference", Some(err))
        }
    })
}

impl SpectrumArgs {
    fn run(&self) -> Res<Outcome> {
        dim(self.d)?;
        count("n-eigs", self.n_eigs, 1, 100_000)?;
        count("n-grid", self.n_grid, 16, MAX_GRID)?;
        if !(1..=10_000_000).contains(&self.cutoff) {
            return Err(bad("--cutoff must be in 1..=10000000"));
        }
        let v = load_potential(&self.potential, self.d)?;
        let (s, source, err) = solve_spectrum(&v, self.n_eigs, self.n_grid, self.cutoff)?;
        let k = s.eigenvalues.len().min(self.n_eigs);
        let mut out = Outcome::default();
        let mut plot = Plot { columns: vec!["index".into(), "eigenvalue".into()], data: vec![] };
        for i in 0..k {
            let e = err.as_ref().and_then(|e| e.get(i).copied());
            out.rows.push(row(&[("index", json!(i)), ("eigenvalue", json!(s.eigenvalues[i])), ("multiplicity", json!(s.multiplicities[i])), ("error_estimate", json!(e))]));
            plot.data.push(vec![i as f64, s.eigenvalues[i]]);
        }
        out.results = json!({
            "source": source,
            "levels": k,
            "eigenvalues": &s.eigenvalues[..k],
            "multiplicities": &s.multiplicities[..k],
            "error_estimates": err.map(|e| e[..k.min(e.len())].to_vec()),
        });
        out.summary.push(format!("{k} levels ({source})"));
        for i in 0..k.min(5) {
            out.summary.push(format!("  λ_{i} = {} (×{})", sci(s.eigenvalues[i]), s.multiplicities[i]));
        }
        out.plot = Some(plot);
        Ok(out)
    }
}

// ---- trace-verify ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceFamily {
    Power,
    Exp,
    Fermi,
    Standard,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TraceArgs {
    #[arg(long)]
    pub potential: String,
    #[arg(long, value_enum)]
    pub family: TraceFamily,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Heat-kernel time for the exponential family.
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub c_lt: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    #[arg(long, default_value_t = 100)]
    pub n_eigs: usize,
    #[arg(long, default_value_t = 4000)]
    pub n_grid: usize,
    #[arg(long, default_value_t = 2000)]
    pub cutoff: u64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

impl TraceArgs {
    fn run(&self) -> Res<Outcome> {
        dim(self.d)?;
        count("n-eigs", self.n_eigs, 1, 100_000)?;
        count("n-grid", self.n_grid, 16, MAX_GRID)?;
        positive("tol", self.tol)?;
        for (n, v) in [("gamma", self.gamma), ("t", self.t), ("c-lt", self.c_lt)] {
            if let Some(x) = v {
                positive(n, x)?;
            }
        }
        let base = match self.family {
            TraceFamily::Power => WeightFamily::Power { gamma: f64::NAN },
            TraceFamily::Exp => WeightFamily::Exponential { t: 1.0 },
            TraceFamily::Fermi => WeightFamily::Fermi,
            TraceFamily::Standard => WeightFamily::StandardPower { gamma: f64::NAN, c_lt: f64::NAN },
        };
        let family = base.with_params(self.gamma, self.t, self.c_lt)?;
        let w = weight_pair(family, self.d)?;
        let v = load_potential(&self.potential, self.d)?;
        let cfg = SolverConfig { n_eigs: self.n_eigs, n_grid: self.n_grid, cutoff: self.cutoff, tol: self.tol };
        let rep = verify_trace_inequality(&v, &w, &cfg)?;
        let mut out = Outcome::default();
        out.rows.push(row(&[
            ("lhs", json!(rep.lhs)),
            ("lhs_error", json!(rep.lhs_error)),
            ("rhs", json!(rep.rhs)),
            ("rhs_error", json!(rep.rhs_error)),
            ("ratio", json!(rep.ratio)),
            ("allowance", json!(rep.allowance)),
            ("holds", json!(rep.holds)),
        ]));
        out.checks.push(Check::new("trace_inequality", rep.holds, format!("ratio {} (allowance {})", sci(rep.ratio), sci(rep.allowance))));
        out.summary.push(format!("Σ F(λ) = {} ± {}", sci(rep.lhs), sci(rep.lhs_error)));
        out.summary.push(format!("∫ G(V) = {} ± {}", sci(rep.rhs), sci(rep.rhs_error)));
        out.summary.push(format!("ratio  = {} ({})", sci(rep.ratio), rep.spectrum_source));
        if !rep.within_hypotheses {
            out.summary.push("note: f is a signed measure for this family; the general theorem does not cover it".into());
        }
        out.results = to_value(&rep);
        Ok(out)
    }
}

// ---- weyl-sweep ----

#[derive(Args, Debug, Clone, Serialize)]
pub struct WeylArgs {
    #[arg(long)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// Strictly decreasing list, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1,0.1,0.01")]
    pub eps: Vec<f64>,
}

impl WeylArgs {
    fn run(&self) -> Res<Outcome> {
        finite("gamma", self.gamma)?;
        dim(self.d)?;
        if self.eps.is_empty() || self.eps.len() > 64 {
            return Err(bad("--eps takes 1..=64 values"));
        }
        for e in &self.eps {
            positive("eps", *e)?;
        }
        let rows = weyl_sweep(self.gamma, self.d, &self.eps)?;
        let mut out = Outcome::default();
        let mut plot = Plot { columns: vec!["eps".into(), "ratio".into(), "lower_bound".into()], data: vec![] };
        for r in &rows {
            out.rows.push(to_value(r).as_object().cloned().unwrap_or_default());
            plot.data.push(vec![r.eps, r.ratio, 1.0 - r.delta]);
            out.summary.push(format!("ε = {:<10} ratio = {}  (≥ {})", r.eps, sci(r.ratio), sci(1.0 - r.delta)));
        }
        let bounded = rows.iter().all(|r| r.ratio <= 1.0);
        let increasing = rows.windows(2).all(|p| p[1].ratio > p[0].ratio);
        out.checks.push(Check::new("ratios_at_most_one", bounded, ""));
        out.checks.push(Check::new("ratios_increasing", increasing, ""));
        out.results = json!({ "rows": rows });
        out.plot = Some(plot);
        Ok(out)
    }
}

// ---- harmonic-q ----

#[derive(Args, Debug, Clone, Serialize)]
pub struct HarmonicQArgs {
    #[arg(long)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// Explicit s values; otherwise a log-spaced grid.
    #[arg(long, value_delimiter = ',')]
    pub s: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.01)]
    pub s_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub s_max: f64,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
}

impl HarmonicQArgs {
    fn grid(&self) -> Res<Vec<f64>> {
        if let Some(s) = &self.s {
            if s.is_empty() || s.len() > 100_000 {
                return Err(bad("--s takes 1..=100000 values"));
            }
            for x in s {
                positive("s", *x)?;
            }
            return Ok(s.clone());
        }
        positive("s-min", self.s_min)?;
        positive("s-max", self.s_max)?;
        if !(self.s_max > self.s_min) {
            return Err(bad("--s-max must exceed --s-min"));
        }
        count("points", self.points, 2, 100_000)?;
        let (a, b) = (self.s_min.ln(), self.s_max.ln());
        Ok((0..self.points).map(|i| (a + (b - a) * i as f64 / (self.points - 1) as f64).exp()).collect())
    }

    fn run(&self) -> Res<Outcome> {
        finite("gamma", self.gamma)?;
        dim(self.d)?;
        let grid = self.grid()?;
        if !(self.gamma > self.d as f64) {
            return Err(bad(format!("q(s) needs gamma > d, got gamma = {}, d = {}", self.gamma, self.d)));
        }
        let mut out = Outcome::default();
        let mut plot = Plot { columns: vec!["s".into(), "q".into()], data: vec![] };
        let mut max_q = f64::NEG_INFINITY;
        let mut vals = Vec::new();
        for &s in &grid {
            let q = harmonic_q(s, self.gamma, self.d)?;
            max_q = max_q.max(q.value);
            out.rows.push(row(&[("s", json!(s)), ("q", json!(q.value)), ("error", json!(q.error))]));
            plot.data.push(vec![s, q.value]);
            vals.push(json!({ "s": s, "q": q.value, "error": q.error }));
        }
        out.checks.push(Check::new("q_at_most_one", max_q <= 1.0 + 1e-12, format!("max q = {}", sci(max_q))));
        out.summary.push(format!("{} points, max q = {}", grid.len(), sci(max_q)));
        out.results = json!({ "values": vals, "max_q": max_q });
        out.plot = Some(plot);
        Ok(out)
    }
}

// ---- gn-solve ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyArg {
    Standard,
    Dual,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Standard => Family::Standard,
            FamilyArg::Dual => Family::Dual,
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GnArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// Writes the radial profile as two-column text.
    #[arg(long)]
    #[serde(skip)]
    pub profile: Option<PathBuf>,
}

impl GnArgs {
    fn run(&self) -> Res<Outcome> {
        finite("gamma", self.gamma)?;
        dim(self.d)?;
        let family: Family = self.family.into();
        match family {
            Family::Standard => constants::kappa_standard(self.gamma, self.d)?,
            Family::Dual => constants::kappa_dual(self.gamma, self.d)?,
        };
        let gs = ground_state_for(family, self.gamma, self.d)?;
        let gn = gn_constant(family, self.gamma, self.d, &gs)?;
        let bound = one_bound_state_from(&gs, self.gamma)?;
        if let Some(p) = &self.profile {
            std::fs::write(p, gs.to_two_column())?;
        }
        let mut out = Outcome::default();
        out.checks.push(Check::new("one_bound_state_agreement", bound.relative_gap <= 1e-3, format!("relative gap {}", sci(bound.relative_gap))));
        out.checks.push(Check::new("scale_invariance", gn.invariance_error <= 1e-8, sci(gn.invariance_error)));
        out.rows.push(row(&[
            ("family", json!(family)),
            ("gamma", json!(self.gamma)),
            ("d", json!(self.d)),
            ("q", json!(gs.q)),
            ("u0", json!(gs.u0)),
            ("gn_constant", json!(gn.value)),
            ("direct", json!(bound.direct)),
            ("via_kappa", json!(bound.via_kappa)),
            ("relative_gap", json!(bound.relative_gap)),
            ("el_residual", json!(gs.residual)),
        ]));
        out.summary.push(format!("u(0) = {}, support = {}", sci(gs.u0), gs.support_radius.map_or("unbounded".into(), sci)));
        out.summary.push(format!("Gagliardo–Nirenberg constant = {}", sci(gn.value)));
        out.summary.push(format!("one-bound-state: direct {} via κ {} (gap {})", sci(bound.direct), sci(bound.via_kappa), sci(bound.relative_gap)));
        out.summary.push(format!("Euler–Lagrange residual = {}", sci(gs.residual)));
        out.results = json!({
            "ground_state": {
                "family": family,
                "q": gs.q,
                "u0": gs.u0,
                "support_radius": gs.support_radius,
                "mesh_step": gs.h(),
                "mesh_points": gs.r.len(),
                "norms": gs.norms,
                "residual": gs.residual,
                "bracket_steps": gs.bracket_log.len(),
            },
            "gn_constant": gn,
            "one_bound_state": bound,
        });
        let stride = (gs.r.len() / 2000).max(1);
        out.plot = Some(Plot {
            columns: vec!["r".into(), "u".into(), "du".into()],
            data: (0..gs.r.len()).step_by(stride).map(|i| vec![gs.r[i], gs.u[i], gs.du[i]]).collect(),
        });
        Ok(out)
    }
}

// ---- occupation laws ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LawArg {
    Boltzmann,
    Fermi,
    /// β = cν^m, from --law-gamma (dual power law) or --m and --coefficient.
    Power,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct LawArgs {
    #[arg(long, value_enum, default_value_t = LawArg::Fermi)]
    pub law: LawArg,
    /// γ of the power law dual to s^{−γ}.
    #[arg(long)]
    pub law_gamma: Option<f64>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long)]
    pub coefficient: Option<f64>,
}

impl LawArgs {
    fn build(&self) -> Res<OccupationLaw> {
        let law = match self.law {
            LawArg::Boltzmann => OccupationLaw::Boltzmann,
            LawArg::Fermi => OccupationLaw::Fermi,
            LawArg::Power => match self.law_gamma {
                Some(g) => OccupationLaw::power_dual(g)?,
                None => OccupationLaw::PowerM { m: need("m", self.m)?, coefficient: need("coefficient", self.coefficient)? },
            },
        };
        law.validate()?;
        law.require_convex()?;
        Ok(law)
    }
}

// ---- ck-check ----

#[derive(Args, Debug, Clone, Serialize)]
pub struct CkArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub law: LawArgs,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// One explicit pair instead of the random suite.
    #[arg(long, value_delimiter = ',', requires = "nu_bar")]
    pub nu: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', requires = "nu")]
    pub nu_bar: Option<Vec<f64>>,
}

impl CkArgs {
    fn run(&self, ctx: &Ctx) -> Res<Outcome> {
        let law = self.law.build()?;
        law.ck_exponent()?;
        let mut out = Outcome::default();
        if let (Some(nu), Some(nu_bar)) = (&self.nu, &self.nu_bar) {
            let r = ck_lower_bound(nu, nu_bar, &law)?;
            let ok = r.bound <= r.bregman + 1e-12 * r.bregman.abs().max(1.0);
            out.checks.push(Check::new("ck_bound", ok, format!("bound {} ≤ Bregman {}", sci(r.bound), sci(r.bregman))));
            out.rows.push(to_value(&r).as_object().cloned().unwrap_or_default());
            out.summary.push(format!("bound {} vs Bregman sum {}", sci(r.bound), sci(r.bregman)));
            out.results = json!({ "law": law, "pair": r });
            return Ok(out);
        }
        count("trials", self.trials, 1, MAX_TRIALS)?;
        let s = ck_suite(&law, self.trials, ctx.seed, ctx.threads)?;
        out.checks.push(Check::new("ck_bound", s.violations == 0, format!("{} violations, min slack {}", s.violations, sci(s.min_slack))));
        out.rows.push(row(&[("trials", json!(s.trials)), ("violations", json!(s.violations)), ("min_slack", json!(s.min_slack))]));
        out.summary.push(format!("{} pairs, {} violations, min slack {}", s.trials, s.violations, sci(s.min_slack)));
        out.results = json!({ "law": law, "suite": s });
        Ok(out)
    }
}

// ---- ortho-check ----

#[derive(Args, Debug, Clone, Serialize)]
pub struct OrthoArgs {
    #[arg(long, default_value = "harmonic:A=1,B=0")]
    pub potential: String,
    #[arg(long, default_value_t = 6)]
    pub functions: usize,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 12.0)]
    pub half_width: f64,
    #[arg(long, default_value_t = 600)]
    pub n_grid: usize,
}

impl OrthoArgs {
    fn run(&self, ctx: &Ctx) -> Res<Outcome> {
        positive("half-width", self.half_width)?;
        count("n-grid", self.n_grid, 16, MAX_GRID)?;
        count("functions", self.functions, 1, self.n_grid / 4)?;
        count("trials", self.trials, 1, MAX_TRIALS)?;
        let v = load_potential(&self.potential, 1)?;
        let mesh = Mesh::dirichlet(-self.half_width, self.half_width, self.n_grid)?;
        let ham = mesh.hamiltonian(&|x| v.value(x))?;
        let s = ortho_suite(&ham, &mesh, self.functions, self.trials, ctx.seed, ctx.threads)?;
        let mut out = Outcome::default();
        out.checks.push(Check::new("energy_margin_nonnegative", s.min_margin >= -1e-8, format!("min margin {}", sci(s.min_margin))));
        for (i, m) in s.margins.iter().enumerate() {
            out.rows.push(row(&[("trial", json!(i)), ("margin", json!(m))]));
        }
        out.summary.push(format!("{} mixings of {} functions, min margin {}", s.trials, s.functions, sci(s.min_margin)));
        out.results = to_value(&s);
        Ok(out)
    }
}

// ---- evolve ----

#[derive(Args, Debug, Clone, Serialize)]
pub struct EvolveArgs {
    /// Mixed-state JSON; the default is a two-mode state of the potential.
    #[arg(long)]
    pub state: Option<PathBuf>,
    #[arg(long, default_value = "harmonic:A=1,B=0")]
    pub potential: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub law: LawArgs,
    #[arg(long, default_value_t = 10.0)]
    pub final_time: f64,
    #[arg(long, default_value_t = 0.02)]
    pub dt: f64,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 12.0)]
    pub half_width: f64,
    #[arg(long, default_value_t = 600)]
    pub n_grid: usize,
    /// Occupations of the default two-mode state.
    #[arg(long, value_delimiter = ',', default_value = "0.6,0.3")]
    pub occupations: Vec<f64>,
}

/// (ψ₀ ± ψ₁)/√2 with the given occupations.
pub fn two_mode_state(mesh: Mesh, ham: &ltgn_core::spectra::Hamiltonian1d, nu: &[f64]) -> ltgn_core::Result<MixedState> {
    if nu.len() != 2 {
        return Err(ltgn_core::Error::input("the two-mode state takes two occupations"));
    }
    let (_, psi) = ham.eigenpairs(2)?;
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let a: Vec<f64> = psi[0].iter().zip(&psi[1]).map(|(x, y)| c * (x + y)).collect();
    let b: Vec<f64> = psi[0].iter().zip(&psi[1]).map(|(x, y)| c * (x - y)).collect();
    MixedState::new(nu.to_vec(), mesh, vec![to_complex(&a), to_complex(&b)])
}

impl EvolveArgs {
    fn run(&self) -> Res<Outcome> {
        positive("final-time", self.final_time)?;
        positive("dt", self.dt)?;
        if self.final_time / self.dt > 1e7 {
            return Err(bad("more than 1e7 time steps requested"));
        }
        count("samples", self.samples, 1, 100_000)?;
        let law = self.law.build()?;
        let v = load_potential(&self.potential, 1)?;
        let state = match &self.state {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| bad(format!("cannot read state `{}`: {e}", p.display())))?;
                MixedState::from_json(&text)?
            }
            None => {
                positive("half-width", self.half_width)?;
                count("n-grid", self.n_grid, 16, MAX_GRID)?;
                let mesh = Mesh::dirichlet(-self.half_width, self.half_width, self.n_grid)?;
                let ham = mesh.hamiltonian(&|x| v.value(x))?;
                two_mode_state(mesh, &ham, &self.occupations)?
            }
        };
        let ham = state.mesh.hamiltonian(&|x| v.value(x))?;
        let rep = evolve_check(&state, &ham, &law, self.final_time, self.dt, self.samples)?;
        let mut out = Outcome::default();
        out.checks.push(Check::new("free_energy_conserved", rep.max_free_energy_drift <= 1e-8, sci(rep.max_free_energy_drift)));
        out.checks.push(Check::new("occupations_unchanged", rep.occupations_unchanged, ""));
        let mut plot = Plot { columns: vec!["t".into(), "energy_term".into(), "rhs".into()], data: vec![] };
        for r in &rep.cor2 {
            out.rows.push(to_value(r).as_object().cloned().unwrap_or_default());
            plot.data.push(vec![r.t, r.energy_term, r.rhs]);
        }
        out.summary.push(format!("{} steps of {} to T = {}", rep.steps, sci(rep.dt), rep.final_time));
        out.summary.push(format!("free-energy drift {}, energy drift {}, orthonormality drift {}", sci(rep.max_free_energy_drift), sci(rep.max_energy_drift), sci(rep.max_orthonormality_drift)));
        out.results = to_value(&rep);
        out.plot = Some(plot);
        Ok(out)
    }
}

// ---- cn-mono ----

#[derive(Args, Debug, Clone, Serialize)]
pub struct CnArgs {
    #[arg(long, default_value_t = 2.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    #[arg(long, default_value_t = 2)]
    pub n_max: usize,
}

impl CnArgs {
    fn run(&self) -> Res<Outcome> {
        finite("gamma", self.gamma)?;
        dim(self.d)?;
        if self.d != 1 {
            return Err(bad("cn-mono is implemented for d = 1"));
        }
        count("n-max", self.n_max, 1, 20)?;
        constants::q_dual(self.gamma, self.d)?;
        let est = (1..=self.n_max).map(|n| cn_estimate(n, self.gamma, self.d)).collect::<ltgn_core::Result<Vec<_>>>()?;
        let sharp = est[0].sharp_constant;
        let mut out = Outcome::default();
        let increasing = est.windows(2).all(|p| p[1].value > p[0].value);
        let below = est.iter().all(|e| e.value < sharp);
        out.checks.push(Check::new("strictly_increasing", increasing, ""));
        out.checks.push(Check::new("below_sharp_constant", below, format!("sharp {}", sci(sharp))));
        let mut plot = Plot { columns: vec!["n".into(), "value".into()], data: vec![] };
        for e in &est {
            out.rows.push(row(&[("n", json!(e.n)), ("value", json!(e.value)), ("sharp_constant", json!(sharp))]));
            plot.data.push(vec![e.n as f64, e.value]);
            out.summary.push(format!("n = {}: {}", e.n, sci(e.value)));
        }
        out.summary.push(format!("sharp constant {}", sci(sharp)));
        out.results = json!({ "estimates": est, "sharp_constant": sharp });
        out.plot = Some(plot);
        Ok(out)
    }
}

// ---- interp-check ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairArg {
    /// F = e^{−s}: the log-Sobolev pair.
    Logsob,
    /// F = s^{−γ}.
    Dual,
    /// F = (−s)₊^γ with a caller-supplied C_LT.
    Standard,
    Fermi,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct InterpArgs {
    #[arg(long, value_enum)]
    pub pair: PairArg,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub c_lt: Option<f64>,
    /// A mixed-state JSON file to test instead of the random corpus.
    #[arg(long)]
    pub state: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    pub corpus: usize,
    #[arg(long, default_value_t = 5)]
    pub max_functions: usize,
    #[arg(long, default_value_t = 20.0)]
    pub half_width: f64,
    #[arg(long, default_value_t = 3999)]
    pub n_grid: usize,
}

impl InterpArgs {
    fn run(&self, ctx: &Ctx) -> Res<Outcome> {
        for (n, v) in [("gamma", self.gamma), ("c-lt", self.c_lt)] {
            if let Some(x) = v {
                positive(n, x)?;
            }
        }
        let family = match self.pair {
            PairArg::Logsob => WeightFamily::Exponential { t: 1.0 },
            PairArg::Fermi => WeightFamily::Fermi,
            PairArg::Dual => WeightFamily::Power { gamma: need("gamma", self.gamma)? },
            PairArg::Standard => WeightFamily::StandardPower { gamma: need("gamma", self.gamma)?, c_lt: need("c-lt", self.c_lt)? },
        };
        let pair = legendre_pair(family, 1)?;
        let states = match &self.state {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| bad(format!("cannot read state `{}`: {e}", p.display())))?;
                vec![MixedState::from_json(&text)?]
            }
            None => {
                positive("half-width", self.half_width)?;
                count("n-grid", self.n_grid, 16, MAX_GRID)?;
                count("corpus", self.corpus, 1, 100_000)?;
                count("max-functions", self.max_functions, 1, 64)?;
                let mesh = Mesh::dirichlet(-self.half_width, self.half_width, self.n_grid)?;
                random_corpus(&mesh, self.corpus, self.max_functions, ctx.seed, ctx.threads)?
            }
        };
        let label = format!("{:?}", self.pair).to_lowercase();
        let corpus = corpus_check(&states, &pair, &label, ctx.seed, ctx.threads)?;
        let mut out = Outcome::default();
        let mut scaled = Vec::new();
        for (i, s) in states.iter().enumerate() {
            let sys = system_interp_check(s, &pair)?;
            let sc = pair.closed_form.map(|_| scaled_form_check(s, &pair)).transpose()?;
            out.rows.push(row(&[
                ("state", json!(i)),
                ("functions", json!(s.len())),
                ("kinetic", json!(sys.kinetic)),
                ("entropy", json!(sys.entropy)),
                ("rhs", json!(sys.rhs)),
                ("gap", json!(sys.gap)),
                ("scaled_margin", json!(sc.as_ref().map(|r| r.margin))),
            ]));
            scaled.extend(sc);
        }
        out.checks.push(Check::new("system_gap_nonnegative", corpus.min_gap >= -1e-8, format!("min gap {}", sci(corpus.min_gap))));
        if !scaled.is_empty() {
            let min_margin = scaled.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
            out.checks.push(Check::new("scaled_form_holds", min_margin >= -1e-8, format!("min margin {}", sci(min_margin))));
            out.summary.push(format!("scaled form: {} (min margin {})", scaled[0].constant_formula, sci(min_margin)));
        }
        out.summary.push(format!("{} states, min system gap {}", corpus.states, sci(corpus.min_gap)));
        let mut results = json!({ "pair": pair, "corpus": corpus, "scaled": scaled });
        if self.pair == PairArg::Logsob && self.state.is_none() {
            let mesh = states[0].mesh;
            let phi = gaussian(&mesh, 0.5);
            let sharp = sharp_lsi_gap(&mesh, &phi)?;
            let system = single_function_check(mesh, &phi, &pair)?;
            out.checks.push(Check::new("optimal_gaussian_sharp_gap", sharp.abs() <= 1e-6, sci(sharp)));
            out.summary.push(format!("optimal Gaussian: sharp gap {}, system gap {}", sci(sharp), sci(system.gap)));
            results["optimal_gaussian"] = json!({ "variance": 0.5, "sharp_gap": sharp, "system": system });
        }
        out.results = results;
        Ok(out)
    }
}

// ---- logsob ----

#[derive(Args, Debug, Clone, Serialize)]
pub struct LogsobArgs {
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    pub d: Vec<u32>,
}

impl LogsobArgs {
    fn run(&self) -> Res<Outcome> {
        if self.d.is_empty() || self.d.len() > 16 {
            return Err(bad("--d takes 1..=16 values"));
        }
        for &d in &self.d {
            dim(d)?;
        }
        let mut out = Outcome::default();
        let mut reps = Vec::new();
        for &d in &self.d {
            let r = log_sobolev_constant_check(d)?;
            let err = (r.value - r.closed).abs();
            out.checks.push(Check::new(&format!("closed_form_d{d}"), err <= 1e-6, sci(err)));
            out.rows.push(row(&[("d", json!(d)), ("value", json!(r.value)), ("closed", json!(r.closed)), ("optimal_variance", json!(r.optimal_variance)), ("optimal_gap", json!(r.optimal_gap))]));
            out.summary.push(format!("d = {d}: {} (closed form {})", sci(r.value), sci(r.closed)));
            reps.push(r);
        }
        out.results = json!({ "reports": reps });
        Ok(out)
    }
}

// ---- gt-study ----

#[derive(Args, Debug, Clone, Serialize)]
pub struct GtArgs {
    #[arg(long, default_value = "harmonic:A=1,B=0")]
    pub potential: String,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = 12.0)]
    pub half_width: f64,
    #[arg(long, value_delimiter = ',', default_value = "199,399,799,1599")]
    pub grids: Vec<usize>,
    /// Continuum trace; defaults to the closed form for harmonic potentials.
    #[arg(long)]
    pub reference: Option<f64>,
}

impl GtArgs {
    fn run(&self) -> Res<Outcome> {
        positive("t", self.t)?;
        positive("half-width", self.half_width)?;
        if self.grids.len() < 2 || self.grids.len() > 16 {
            return Err(bad("--grids takes 2..=16 values"));
        }
        for &g in &self.grids {
            count("grids", g, 16, MAX_GRID)?;
        }
        let v = load_potential(&self.potential, 1)?;
        let reference = match (self.reference, &v.kind) {
            (Some(r), _) => Some(positive("reference", r)?),
            (None, PotentialKind::Harmonic { a, b }) => Some(ltgn_core::spectra::harmonic_heat_trace(*a, *b, 1, self.t)),
            _ => None,
        };
        let study = discrete_gt_study(&v, (-self.half_width, self.half_width), self.t, &self.grids, reference)?;
        let mut out = Outcome::default();
        out.checks.push(Check::new("bound_holds", study.rows.iter().all(|r| r.holds), ""));
        for r in &study.rows {
            out.rows.push(to_value(r).as_object().cloned().unwrap_or_default());
            out.summary.push(format!("n = {:<6} trace {} excess {}", r.n_grid, sci(r.trace), sci(r.excess)));
        }
        out.summary.push(format!("reduction factors {:?}", study.reduction_factors.iter().map(|f| format!("{f:.3}")).collect::<Vec<_>>()));
        out.results = to_value(&study);
        Ok(out)
    }
}

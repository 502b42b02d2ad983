//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::f64::consts::{E, PI};
use std::time::{Duration, Instant};

use ltgn_core::constants::{self, Family, SemiclassicalParams};
use ltgn_core::groundstate::{one_bound_state_constant, shoot_ground_state, soliton_1d};
use ltgn_core::interpolation::{corpus_check, gaussian, legendre_pair, log_sobolev_constant_check, random_corpus, sharp_lsi_gap};
use ltgn_core::mixedstate::{ck_suite, cn_estimate, evolve_check, ortho_suite, Mesh, OccupationLaw};
use ltgn_core::riesz::{harmonic_q, verify_trace_inequality, weight_pair, weyl_sweep, SolverConfig, WeightFamily};
use ltgn_core::spectra::{dirichlet_solve, discrete_gt_study, harmonic_heat_trace, Potential, PotentialKind};

type Outcome = Result<(bool, String), String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

struct Verdict {
    pass: bool,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Self { pass: true, notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, note: String) {
        self.pass &= ok;
        self.notes.push(if ok { note } else { format!("!{note}") });
    }

    fn done(self) -> Outcome {
        Ok((self.pass, self.notes.join("; ")))
    }
}

fn c1() -> Outcome {
    let mut v = Verdict::new();
    let a = constants::sharp_constant_unit(1.0, 1).map_err(err)?;
    let b = constants::sharp_constant_unit(1.5, 1).map_err(err)?;
    v.check((a - 0.5).abs() <= 1e-12, format!("C(1,1) = {a:.15}"));
    v.check((b - 1.0 / PI).abs() <= 1e-12, format!("C(3/2,1) = {b:.15}"));
    let mut worst: f64 = 0.0;
    for hbar in [0.5, 1.0, 2.0] {
        for mass in [0.5, 1.0, 2.0] {
            for (gamma, d) in [(1.0, 1), (1.5, 1), (2.0, 3)] {
                let c = constants::sharp_constant(&SemiclassicalParams { gamma, d, hbar, mass }).map_err(err)?;
                let unit = constants::sharp_constant_unit(gamma, d).map_err(err)?;
                let factor = (2.0 * mass / (hbar * hbar)).powf(d as f64 / 2.0);
                worst = worst.max((c / (unit * factor) - 1.0).abs());
            }
        }
    }
    v.check(worst <= 1e-12, format!("3x3 (hbar, m) scaling rel err {worst:.1e}"));
    v.done()
}

fn c2() -> Outcome {
    let mut v = Verdict::new();
    let oracle = 0.5 * (0.5 * PI / PI.tanh() + 0.5 * PI * PI / PI.sinh().powi(2) - 1.0) / (PI / 4.0);
    let rows = weyl_sweep(2.0, 1, &[1.0, 0.1, 0.01]).map_err(err)?;
    v.check((rows[0].ratio - oracle).abs() <= 1e-4, format!("ratio(1) = {:.6} (oracle {oracle:.6})", rows[0].ratio));
    v.check((rows[0].ratio - 0.390678).abs() <= 1e-4, "vs 0.390678".into());
    v.check(rows[2].ratio >= 0.98, format!("ratio(0.01) = {:.6}", rows[2].ratio));
    v.check(rows.iter().all(|r| r.ratio <= 1.0), "all <= 1".into());
    v.done()
}

fn c3() -> Outcome {
    let mut v = Verdict::new();
    let cfg = SolverConfig::default();
    let mut worst: f64 = 0.0;
    let mut all_le_one = true;
    for t in [0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let w = weight_pair(WeightFamily::Exponential { t }, 1).map_err(err)?;
        let r = verify_trace_inequality(&Potential::harmonic(1.0, 0.0, 1).map_err(err)?, &w, &cfg).map_err(err)?;
        worst = worst.max((r.ratio - t / t.sinh()).abs());
        all_le_one &= r.ratio <= 1.0;
    }
    v.check(all_le_one && worst <= 1e-9, format!("t in [0.1, 10]: ratios <= 1, max |ratio - t/sinh t| {worst:.1e}"));
    let w = weight_pair(WeightFamily::Exponential { t: 1.0 }, 1).map_err(err)?;
    let r1 = verify_trace_inequality(&Potential::harmonic(1.0, 0.0, 1).map_err(err)?, &w, &cfg).map_err(err)?;
    v.check((r1.ratio - 0.850918).abs() <= 1e-6, format!("A=1,t=1: {:.9}", r1.ratio));
    let r0 = verify_trace_inequality(&Potential::harmonic(0.01, 0.0, 1).map_err(err)?, &w, &cfg).map_err(err)?;
    v.check((r0.ratio - 1.0).abs() <= 1e-3, format!("A=0.01: {:.7}", r0.ratio));
    v.done()
}

fn c4() -> Outcome {
    let mut v = Verdict::new();
    let pot = Potential::harmonic(1.0, 0.0, 1).map_err(err)?;
    let reference = harmonic_heat_trace(1.0, 0.0, 1, 1.0);
    let s = discrete_gt_study(&pot, (-12.0, 12.0), 1.0, &[199, 399, 799, 1599], Some(reference)).map_err(err)?;
    v.check(s.rows.iter().all(|r| r.holds), "Tr <= gt_rhs (1 + c h^2/t) on every grid".into());
    let f: Vec<String> = s.reduction_factors.iter().map(|x| format!("{x:.3}")).collect();
    v.check(s.reduction_factors.len() == 3 && s.reduction_factors.iter().all(|x| (3.5..=4.5).contains(x)), format!("excess reduction factors [{}]", f.join(", ")));
    v.done()
}

fn zeta3() -> f64 {
    let n = 10_000u64;
    let nf = n as f64;
    (1..=n).rev().map(|k| 1.0 / (k as f64).powi(3)).sum::<f64>() + 1.0 / (2.0 * nf * nf) - 1.0 / (2.0 * nf.powi(3))
}

fn c5() -> Outcome {
    let mut v = Verdict::new();
    let q1 = harmonic_q(1.0, 3.0, 1).map_err(err)?.value;
    v.check((q1 - zeta3() / 2.0).abs() <= 1e-6 && (q1 - 0.601028).abs() <= 1e-6, format!("q(1) = {q1:.9}"));
    let mut max_q: f64 = 0.0;
    for i in 0..50 {
        let s = (0.01f64.ln() + (1000f64).ln() * i as f64 / 49.0).exp();
        max_q = max_q.max(harmonic_q(s, 3.0, 1).map_err(err)?.value);
    }
    v.check(max_q <= 1.0, format!("max q on 50 points in [0.01, 10] = {max_q:.9}"));
    let q0 = harmonic_q(0.01, 3.0, 1).map_err(err)?.value;
    v.check(q0 >= 0.999, format!("q(0.01) = {q0:.7}"));
    v.done()
}

fn c6() -> Outcome {
    let mut v = Verdict::new();
    let closed = (4.0f64 / 3.0).powf(0.125) * 2f64.powf(0.75) / (16.0f64 / 3.0).powf(0.25);
    let c_gn = soliton_1d(2.0).map_err(err)?.quotient(1.5);
    v.check(
        (c_gn - 1.147187).abs() <= 1e-6,
        format!("C_GN = {c_gn:.9} vs target 1.147187 (off by {:.2e}; closed form {closed:.9}, off by {:.1e})", c_gn - 1.147187, c_gn - closed),
    );
    let sech = Potential::new(PotentialKind::Sech2 { c: 2.0, a: 1.0 }, 1).map_err(err)?;
    let l1 = dirichlet_solve(&sech, 1, 8000).map_err(err)?.eigenvalues[0];
    let direct = l1.abs().powf(1.5) / (16.0 / 3.0);
    v.check((direct - 0.1875).abs() <= 1e-4, format!("direct = {direct:.7}"));
    let rel = constants::standard_relation(1.5, 1, c_gn).map_err(err)?;
    let gap = (rel.proof_consistent - direct).abs() / direct;
    v.check(gap <= 1e-4, format!("kappa relation {:.7}, rel gap {gap:.1e}", rel.proof_consistent));
    v.done()
}

fn c7() -> Outcome {
    let mut v = Verdict::new();
    let q = constants::q_dual(2.0, 1).map_err(err)?;
    let gs = shoot_ground_state(Family::Dual, q, 1).map_err(err)?;
    v.check(gs.residual < 1e-8, format!("EL residual {:.1e}, support {:.6}", gs.residual, gs.support_radius.unwrap_or(f64::NAN)));
    let b = one_bound_state_constant(Family::Dual, 2.0, 1).map_err(err)?;
    let rel = (b.direct - b.via_kappa).abs() / b.direct;
    v.check(rel <= 1e-3, format!("direct {:.7}, via kappa {:.7}, rel {rel:.1e}", b.direct, b.via_kappa));
    let one = cn_estimate(1, 2.0, 1).map_err(err)?;
    let two = cn_estimate(2, 2.0, 1).map_err(err)?;
    v.check(one.value < 0.25, format!("C(1) = {:.6} < 1/4", one.value));
    v.check(two.value > one.value, format!("C(2) = {:.6} > C(1)", two.value));
    v.done()
}

fn c8() -> Outcome {
    let mut v = Verdict::new();
    let mesh = Mesh::dirichlet(-12.0, 12.0, 600).map_err(err)?;
    let ham = mesh.hamiltonian(&|x| x * x).map_err(err)?;
    let o = ortho_suite(&ham, &mesh, 6, 200, 0, 1).map_err(err)?;
    v.check(o.min_margin >= -1e-8, format!("ortho min margin {:.2e} over 200 trials", o.min_margin));
    let laws = [OccupationLaw::Boltzmann, OccupationLaw::Fermi, OccupationLaw::power_standard(3.0).map_err(err)?];
    for law in laws {
        let s = ck_suite(&law, 1000, 0, 1).map_err(err)?;
        let name = match law {
            OccupationLaw::Boltzmann => "boltzmann".to_string(),
            OccupationLaw::Fermi => "fermi".to_string(),
            OccupationLaw::PowerM { m, .. } => format!("power m={m}"),
        };
        v.check(s.violations == 0, format!("ck {name}: {} violations, min slack {:.1e}", s.violations, s.min_slack));
    }
    let state = ltgn_cli::commands::two_mode_state(mesh, &ham, &[0.6, 0.3]).map_err(err)?;
    let e = evolve_check(&state, &ham, &OccupationLaw::Fermi, 10.0, 0.02, 20).map_err(err)?;
    v.check(e.max_free_energy_drift <= 1e-8, format!("free-energy drift {:.1e} over T=10", e.max_free_energy_drift));
    v.done()
}

fn c9() -> Outcome {
    let mut v = Verdict::new();
    let pair = legendre_pair(WeightFamily::Exponential { t: 1.0 }, 1).map_err(err)?;
    let mesh = Mesh::dirichlet(-20.0, 20.0, 3999).map_err(err)?;
    let corpus = random_corpus(&mesh, 20, 5, 0, 1).map_err(err)?;
    let rep = corpus_check(&corpus, &pair, "logsob", 0, 1).map_err(err)?;
    v.check(rep.min_gap >= -1e-8, format!("corpus min gap {:.2e}", rep.min_gap));
    let sharp = sharp_lsi_gap(&mesh, &gaussian(&mesh, 0.5)).map_err(err)?;
    v.check(sharp.abs() <= 1e-6, format!("optimal Gaussian gap {sharp:.1e}"));
    for d in [1, 2] {
        let r = log_sobolev_constant_check(d).map_err(err)?;
        v.check((r.value - (2.0 / E).powi(d as i32)).abs() <= 1e-6, format!("(2/e)^{d}: {:.9}", r.value));
    }
    let k = constants::interp_constant(Family::Dual, 2.0, 1, None).map_err(err)?;
    let q: f64 = 0.6;
    let closed = 1.0 / (q * (0.25f64 * 1.5).powf(q - 1.0));
    v.check((k - closed).abs() <= 1e-9, format!("K = {k:.9} (closed form {closed:.9}; 1.125787 differs by {:.1e})", k - 1.125787));
    v.done()
}

const COMMANDS: [&[&str]; 13] = [
    &["constants", "--gamma", "2", "--d", "1"],
    &["spectrum", "--potential", "sech2:c=2,a=1", "--n-eigs", "2", "--n-grid", "400"],
    &["trace-verify", "--potential", "harmonic:A=1,B=0", "--family", "exp"],
    &["weyl-sweep", "--gamma", "2", "--eps", "1,0.1,0.01"],
    &["harmonic-q", "--gamma", "3", "--points", "10"],
    &["gn-solve", "--family", "dual", "--gamma", "2"],
    &["ck-check", "--law", "fermi", "--trials", "200"],
    &["ortho-check", "--trials", "20", "--n-grid", "300"],
    &["evolve", "--final-time", "1", "--dt", "0.02", "--n-grid", "300"],
    &["cn-mono", "--n-max", "1"],
    &["interp-check", "--pair", "logsob", "--corpus", "3", "--n-grid", "999"],
    &["logsob"],
    &["gt-study", "--grids", "99,199,399"],
];

fn c10() -> Outcome {
    let mut v = Verdict::new();
    let once = |args: &[&str]| -> Result<Vec<u8>, String> {
        let mut argv = vec!["ltgn".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        argv.extend(["--out", "-", "--seed", "11", "--threads", "1"].map(String::from));
        let (mut out, mut errs) = (Vec::new(), Vec::new());
        match ltgn_cli::run(argv, None, &mut out, &mut errs) {
            0 => Ok(out),
            code => Err(format!("{} exited {code}: {}", args[0], String::from_utf8_lossy(&errs))),
        }
    };
    let mut differing = Vec::new();
    for args in COMMANDS {
        if once(args)? != once(args)? {
            differing.push(args[0]);
        }
    }
    v.check(differing.is_empty(), format!("{} commands byte-identical across runs{}", COMMANDS.len() - differing.len(), if differing.is_empty() { String::new() } else { format!(", differing: {}", differing.join(" ")) }));
    v.done()
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("sharp constant", c1, Duration::from_secs(1)),
        ("Weyl optimality on the box", c2, Duration::from_secs(10)),
        ("Golden-Thompson on the oscillator", c3, Duration::from_secs(1)),
        ("discretized Golden-Thompson", c4, Duration::from_secs(30)),
        ("harmonic ratio q(s)", c5, Duration::from_secs(5)),
        ("Gagliardo-Nirenberg chain", c6, Duration::from_secs(30)),
        ("dual family", c7, Duration::from_secs(120)),
        ("mixed-state suite", c8, Duration::from_secs(120)),
        ("interpolation suite", c9, Duration::from_secs(60)),
        ("determinism", c10, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let (pass, detail) = match result {
            Ok((pass, detail)) => (pass && took <= *budget, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!("criterion {:>2} {} {name}: {detail} [{:.2} s / {} s]", i + 1, if pass { "PASS" } else { "FAIL" }, took.as_secs_f64(), budget.as_secs());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

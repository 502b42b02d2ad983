//! Legendre-type transforms β ← F and H ← G, the interpolation inequality
//! for systems K[ν,ψ] + Σβ(ν_i) ≥ ∫H(ρ), its scale-optimized forms and the
//! logarithmic Sobolev constant.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::constants::{interp_constant, q_dual, q_standard, Family};
use crate::error::{Error, Mismatch, Result};
use crate::mixedstate::{random_occupations, random_orthogonal, to_complex, trial_rng, Mesh, MixedState, OccupationLaw, ORTHO_TOL};
use crate::parallel::par_map;
use crate::quadrature::{integrate, integrate_line, QuadConfig};
use crate::riesz::{weight_pair, WeightFamily, WeightPair};

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;
/// Densities below this are treated as vacuum in ρ log ρ.
pub const RHO_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ClosedForm {
    /// β = c_m ν^m, H(s) = 𝒦 s^q.
    PowerStandard { k: f64, q: f64, m: f64, c_m: f64 },
    /// β = −c_m ν^m, H(s) = −𝒦 s^q.
    PowerDual { k: f64, q: f64, m: f64, c_m: f64 },
    /// β = ν log ν − ν, H(ρ) = ρ log ρ − ρ + (d/2) log(4π) ρ.
    LogSobolev { d: u32 },
}

/// Where the argument of F or G lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Support {
    Positive,
    Real,
    Negative,
}

impl Support {
    fn point(self, u: f64) -> f64 {
        match self {
            Support::Positive => u.exp(),
            Support::Real => u,
            Support::Negative => -u.exp(),
        }
    }
}

/// Solves g(s(u)) = target for a monotone g by bracket expansion in u and
/// bisection.
fn solve_monotone(g: &dyn Fn(f64) -> f64, target: f64, support: Support) -> Result<f64> {
    let h = |u: f64| g(support.point(u)) - target;
    let limit = 700.0;
    let (mut lo, mut hi) = (-1.0, 1.0);
    let (mut flo, mut fhi) = (h(lo), h(hi));
    while !(flo.is_finite() && fhi.is_finite() && flo * fhi <= 0.0) {
        if lo <= -limit && hi >= limit {
            return Err(Error::domain(format!("value {target} is outside the range of the inverted derivative")));
        }
        lo = (2.0 * lo).max(-limit);
        hi = (2.0 * hi).min(limit);
        flo = h(lo);
        fhi = h(hi);
    }
    if flo == 0.0 {
        return Ok(support.point(lo));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = h(mid);
        if fm == 0.0 {
            return Ok(support.point(mid));
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(support.point(0.5 * (lo + hi)))
}

/// A weight pair together with its β and H.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LegendrePair {
    pub source: WeightPair,
    /// β in closed form where the occupation law is known.
    pub law: Option<OccupationLaw>,
    pub closed_form: Option<ClosedForm>,
}

pub fn legendre_pair(family: WeightFamily, d: u32) -> Result<LegendrePair> {
    let source = weight_pair(family, d)?;
    let (law, closed_form) = match family {
        WeightFamily::Power { gamma } => {
            let law = OccupationLaw::power_dual(gamma)?;
            let OccupationLaw::PowerM { m, coefficient } = law else { unreachable!() };
            let cf = ClosedForm::PowerDual { k: interp_constant(Family::Dual, gamma, d, None)?, q: q_dual(gamma, d)?, m, c_m: -coefficient };
            (Some(law), Some(cf))
        }
        WeightFamily::StandardPower { gamma, c_lt } => {
            let law = OccupationLaw::power_standard(gamma)?;
            let OccupationLaw::PowerM { m, coefficient } = law else { unreachable!() };
            let cf = ClosedForm::PowerStandard { k: interp_constant(Family::Standard, gamma, d, Some(c_lt))?, q: q_standard(gamma, d)?, m, c_m: coefficient };
            (Some(law), Some(cf))
        }
        WeightFamily::Exponential { t } if t == 1.0 => (Some(OccupationLaw::Boltzmann), Some(ClosedForm::LogSobolev { d })),
        WeightFamily::Exponential { .. } => (None, None),
        WeightFamily::Fermi => (Some(OccupationLaw::Fermi), None),
    };
    Ok(LegendrePair { source, law, closed_form })
}

impl LegendrePair {
    fn f_support(&self) -> Support {
        match self.source.family {
            WeightFamily::Power { .. } => Support::Positive,
            WeightFamily::StandardPower { .. } => Support::Negative,
            _ => Support::Real,
        }
    }

    fn g_support(&self) -> Support {
        match self.source.family {
            WeightFamily::Power { .. } | WeightFamily::Fermi => Support::Positive,
            WeightFamily::StandardPower { .. } => Support::Negative,
            WeightFamily::Exponential { .. } => Support::Real,
        }
    }

    /// σ^{−1}(t) with σ = −F′.
    pub fn sigma_inverse(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::domain("σ^{-1} needs t > 0"));
        }
        let w = self.source;
        // Fermi: F′ on s ≤ 0 through the positive branch to keep 1/(1+e^s) accurate.
        solve_monotone(&|s| -w.f_prime(s), t, self.f_support())
    }

    /// β(ν) = −∫₀^ν σ^{−1}(t) dt by numeric inversion and quadrature.
    pub fn beta_numeric(&self, nu: f64) -> Result<f64> {
        if nu < 0.0 || !nu.is_finite() {
            return Err(Error::domain(format!("β needs ν ≥ 0, got {nu}")));
        }
        if nu == 0.0 {
            return Ok(0.0);
        }
        if matches!(self.source.family, WeightFamily::Fermi) && nu > 1.0 {
            return Err(Error::domain("σ = −F′ takes values in (0,1) for the Fermi weight"));
        }
        let err = std::cell::Cell::new(None);
        let q = integrate(
            |t| match self.sigma_inverse(t) {
                Ok(v) => v,
                Err(e) => {
                    err.set(Some(e.to_string()));
                    0.0
                }
            },
            0.0,
            nu,
            QuadConfig { abs_tol: 1e-15, rel_tol: 1e-12, max_intervals: 4000 },
        )?;
        if let Some(e) = err.take() {
            return Err(Error::Domain(e));
        }
        Ok(-q.value)
    }

    /// β in closed form when available, numerically otherwise.
    pub fn beta(&self, nu: f64) -> Result<f64> {
        match self.law {
            Some(l) => Ok(l.beta(nu)),
            None => self.beta_numeric(nu),
        }
    }

    /// F(s) = −min_ν[β(ν) + ν s] with β evaluated numerically; the minimum
    /// is located by golden-section search in log ν.
    pub fn conjugate_numeric(&self, s: f64) -> Result<f64> {
        let obj = |u: f64| -> Result<f64> {
            let nu = u.exp();
            Ok(self.beta_numeric(nu)? + nu * s)
        };
        // The minimizer is σ(s); search a neighbourhood of it in log ν.
        let guess = (-self.source.f_prime(s)).ln();
        if !guess.is_finite() {
            return Ok(0.0);
        }
        let (mut lo, mut hi) = (guess - 2.0, guess + 2.0);
        if matches!(self.source.family, WeightFamily::Fermi) {
            hi = hi.min(-1e-12);
        }
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = hi - g * (hi - lo);
        let mut x2 = lo + g * (hi - lo);
        let (mut f1, mut f2) = (obj(x1)?, obj(x2)?);
        while hi - lo > 1e-7 {
            if f1 > f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = obj(x2)?;
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = obj(x1)?;
            }
        }
        Ok(-f1.min(f2))
    }

    /// (G′)^{−1}(−t).
    pub fn g_prime_inverse(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::domain("(G′)^{-1}(−t) needs t > 0"));
        }
        let w = self.source;
        if matches!(w.family, WeightFamily::Fermi) && t > -w.g_prime(0.0) {
            return Err(Error::domain(format!("−G′ ≤ {} for the Fermi weight; ρ = {t} is out of range", -w.g_prime(0.0))));
        }
        solve_monotone(&|s| -w.g_prime(s), t, self.g_support())
    }

    /// H(s) = ∫_s^0 (G′)^{−1}(−t) dt by numeric inversion and quadrature.
    pub fn h_numeric(&self, s: f64) -> Result<f64> {
        if s < 0.0 || !s.is_finite() {
            return Err(Error::domain(format!("H needs s ≥ 0, got {s}")));
        }
        if s == 0.0 {
            return Ok(0.0);
        }
        let err = std::cell::Cell::new(None);
        let q = integrate(
            |t| match self.g_prime_inverse(t) {
                Ok(v) => v,
                Err(e) => {
                    err.set(Some(e.to_string()));
                    0.0
                }
            },
            0.0,
            s,
            QuadConfig { abs_tol: 1e-15, rel_tol: 1e-12, max_intervals: 4000 },
        )
        .map_err(|e| Error::domain(format!("(G′)^-1 is not integrable near 0: {e}")))?;
        if let Some(e) = err.take() {
            return Err(Error::Domain(e));
        }
        Ok(-q.value)
    }

    /// H in closed form when available, numerically otherwise.
    pub fn h(&self, s: f64) -> Result<f64> {
        Ok(match self.closed_form {
            Some(ClosedForm::PowerStandard { k, q, .. }) => k * s.powf(q),
            Some(ClosedForm::PowerDual { k, q, .. }) => -k * s.powf(q),
            Some(ClosedForm::LogSobolev { d }) => {
                if s <= RHO_FLOOR {
                    0.0
                } else {
                    s * s.ln() - s + 0.5 * d as f64 * FOUR_PI.ln() * s
                }
            }
            None => self.h_numeric(s)?,
        })
    }
}

/// K[ν,ψ] = Σ ν_i ∫|ψ_i′|² with an eighth-order centered derivative; the
/// functions vanish outside the mesh.
pub fn kinetic_high_order(state: &MixedState) -> f64 {
    const C: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
    let h = state.mesh.step;
    let n = state.mesh.points;
    let zero = Complex64::new(0.0, 0.0);
    state
        .occupations
        .iter()
        .zip(&state.psi)
        .map(|(nu, p)| {
            let at = |i: isize| if i < 0 || i >= n as isize { zero } else { p[i as usize] };
            let mut s = 0.0;
            for i in -4..(n as isize + 4) {
                let mut d = zero;
                for (k, c) in C.iter().enumerate() {
                    let k = k as isize + 1;
                    d += (at(i + k) - at(i - k)) * *c;
                }
                s += (d / h).norm_sqr();
            }
            nu * s * h
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemReport {
    pub kinetic: f64,
    pub entropy: f64,
    pub rhs: f64,
    /// K + Σβ(ν_i) − ∫H(ρ).
    pub gap: f64,
    pub tolerance: f64,
}

/// K[ν,ψ] + Σβ(ν_i) ≥ ∫H(ρ) on an orthonormal state.
pub fn system_interp_check(state: &MixedState, pair: &LegendrePair) -> Result<SystemReport> {
    let defect = state.orthonormality_defect();
    if defect > ORTHO_TOL {
        return Err(Error::input(format!("wavefunctions are not orthonormal (defect {defect:e})")));
    }
    let kinetic = kinetic_high_order(state);
    let entropy = state.occupations.iter().map(|&v| pair.beta(v)).sum::<Result<f64>>()?;
    let rho = state.density();
    let rhs = rho.iter().map(|&r| pair.h(r)).sum::<Result<f64>>()? * state.mesh.step;
    let gap = kinetic + entropy - rhs;
    let tolerance = 1e-8 * kinetic.abs().max(entropy.abs()).max(rhs.abs()).max(1.0);
    if gap < -tolerance {
        return Err(Error::Consistency(Mismatch { context: "interpolation inequality for systems".into(), left: kinetic + entropy, right: rhs, tolerance }));
    }
    Ok(SystemReport { kinetic, entropy, rhs, gap, tolerance })
}

/// The one-function case: ν₁ = ∫|φ|², ψ₁ = φ/‖φ‖.
pub fn single_function_check(mesh: Mesh, phi: &[f64], pair: &LegendrePair) -> Result<SystemReport> {
    let c = to_complex(phi);
    let n2 = mesh.norm_sq(&c);
    if !(n2 > 0.0) {
        return Err(Error::input("φ must be nonzero"));
    }
    let s = 1.0 / n2.sqrt();
    let state = MixedState::new(vec![n2], mesh, vec![c.iter().map(|z| z * s).collect()])?;
    system_interp_check(&state, pair)
}

/// min_{λ>0} λ^a + λ^b for a < 0 < b, found numerically in log λ.
pub fn scaling_minimum(a: f64, b: f64) -> f64 {
    let f = |u: f64| (a * u).exp() + (b * u).exp();
    let (mut lo, mut hi) = (-60.0f64, 60.0f64);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if f1 > f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    f1.min(f2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaledReport {
    pub form: String,
    pub theta: f64,
    /// The constant of the scaled form from the numeric λ-optimization.
    pub constant: f64,
    /// Its closed form, stated in `constant_formula`.
    pub constant_closed: f64,
    pub constant_formula: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// Unscaled gap minimized over λ ∈ [0.1, 10].
    pub unscaled_min_gap: f64,
    /// The same minimum from the scaled form (over all λ > 0).
    pub scaled_min_gap: f64,
    /// Set when the result depends on a caller-supplied C_LT.
    pub conditional_on_c_lt: bool,
}

fn golden_min_log(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (lo.ln(), hi.ln());
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1.exp()), f(x2.exp()));
    for _ in 0..200 {
        if f1 > f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2.exp());
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1.exp());
        }
    }
    f1.min(f2).min(f(lo.exp())).min(f(hi.exp()))
}

/// The scale-optimized forms:
/// standard K^θ (Σν^m)^{1−θ} ≥ ℒ ∫ρ^q, θ = d/(2(γ−1)+d);
/// dual K^θ (∫ρ^q)^{1−θ} ≥ ℒ Σν^m, θ = d/(2(γ+1));
/// log-Sobolev ∫ρ log ρ ≤ Σ ν log ν + (d/2) log(e K/(2π d ∫ρ)) ∫ρ.
pub fn scaled_form_check(state: &MixedState, pair: &LegendrePair) -> Result<ScaledReport> {
    let cf = pair.closed_form.ok_or_else(|| Error::domain("scaled forms need a closed-form pair"))?;
    let d = pair.source.d as f64;
    let k = kinetic_high_order(state);
    let rho = state.density();
    let h = state.mesh.step;
    let tol = |x: f64, y: f64| 1e-8 * x.abs().max(y.abs()).max(1.0);
    let rep = match cf {
        ClosedForm::PowerStandard { k: kk, q, m, c_m } => {
            let s: f64 = state.occupations.iter().map(|v| v.powf(m)).sum();
            let r: f64 = rho.iter().map(|x| x.powf(q)).sum::<f64>() * h;
            let a = d * (1.0 - 1.0 / q) - 2.0;
            let b = m * d * (1.0 - 1.0 / q);
            let theta = b / (b - a);
            let kappa = scaling_minimum(a, b);
            let kappa_closed = theta.powf(-theta) * (1.0 - theta).powf(theta - 1.0);
            let constant = kk / (kappa * c_m.powf(1.0 - theta));
            let closed = kk * theta.powf(theta) * (1.0 - theta).powf(1.0 - theta) * c_m.powf(theta - 1.0);
            let lhs = k.powf(theta) * s.powf(1.0 - theta);
            let rhs = constant * r;
            let unscaled = golden_min_log(&|l| l.powf(a) * k + l.powf(b) * c_m * s - kk * r, 0.1, 10.0);
            let scaled = kappa_closed * k.powf(theta) * (c_m * s).powf(1.0 - theta) - kk * r;
            ScaledReport {
                form: "standard_power".into(),
                theta,
                constant,
                constant_closed: closed,
                constant_formula: "K θ^θ (1−θ)^(1−θ) c_m^(θ−1)".into(),
                lhs,
                rhs,
                margin: lhs - rhs,
                unscaled_min_gap: unscaled,
                scaled_min_gap: scaled,
                conditional_on_c_lt: true,
            }
        }
        ClosedForm::PowerDual { k: kk, q, m, c_m } => {
            let s: f64 = state.occupations.iter().map(|v| v.powf(m)).sum();
            let r: f64 = rho.iter().map(|x| x.powf(q)).sum::<f64>() * h;
            let (a, b) = (-2.0, d * (1.0 - q));
            let theta = b / (b - a);
            let kappa = scaling_minimum(a, b);
            let kappa_closed = theta.powf(-theta) * (1.0 - theta).powf(theta - 1.0);
            let constant = c_m / (kappa * kk.powf(1.0 - theta));
            let closed = c_m * theta.powf(theta) * (1.0 - theta).powf(1.0 - theta) * kk.powf(theta - 1.0);
            let lhs = k.powf(theta) * r.powf(1.0 - theta);
            let rhs = constant * s;
            let unscaled = golden_min_log(&|l| l.powf(a) * k + l.powf(b) * kk * r - c_m * s, 0.1, 10.0);
            let scaled = kappa_closed * k.powf(theta) * (kk * r).powf(1.0 - theta) - c_m * s;
            ScaledReport {
                form: "dual_power".into(),
                theta,
                constant,
                constant_closed: closed,
                constant_formula: "c_m θ^θ (1−θ)^(1−θ) K^(θ−1)".into(),
                lhs,
                rhs,
                margin: lhs - rhs,
                unscaled_min_gap: unscaled,
                scaled_min_gap: scaled,
                conditional_on_c_lt: false,
            }
        }
        ClosedForm::LogSobolev { .. } => {
            let mass: f64 = rho.iter().sum::<f64>() * h;
            let ent_nu: f64 = state.occupations.iter().map(|&v| if v > 0.0 { v * v.ln() } else { 0.0 }).sum();
            let ent_rho: f64 = rho.iter().map(|&x| if x > RHO_FLOOR { x * x.ln() } else { 0.0 }).sum::<f64>() * h;
            // exp((2/d) min_λ[λ^{-2} + d log λ] − log 4π) with K = ∫ρ = 1.
            let m = golden_min_log(&|l| l.powi(-2) + d * l.ln(), 1e-3, 1e3);
            let constant = (2.0 / d * m).exp() / FOUR_PI;
            let closed = std::f64::consts::E / (2.0 * std::f64::consts::PI * d);
            let rhs = ent_nu + 0.5 * d * (constant * k / mass).ln() * mass;
            let unscaled = golden_min_log(&|l| k / (l * l) + ent_nu + d * mass * l.ln() - 0.5 * d * FOUR_PI.ln() * mass - ent_rho, 0.1, 10.0);
            ScaledReport {
                form: "log_sobolev".into(),
                theta: f64::NAN,
                constant,
                constant_closed: closed,
                constant_formula: "e/(2π d)".into(),
                lhs: ent_rho,
                rhs,
                margin: rhs - ent_rho,
                unscaled_min_gap: unscaled,
                scaled_min_gap: rhs - ent_rho,
                conditional_on_c_lt: false,
            }
        }
    };
    let t = tol(rep.lhs, rep.rhs);
    if rep.margin < -t {
        return Err(Error::Consistency(Mismatch { context: format!("scaled {} inequality", rep.form), left: rep.lhs, right: rep.rhs, tolerance: t }));
    }
    Ok(rep)
}

/// θ of the scaled standard and dual forms.
pub fn theta(family: Family, gamma: f64, d: u32) -> f64 {
    let d = d as f64;
    match family {
        Family::Standard => d / (2.0 * (gamma - 1.0) + d),
        Family::Dual => d / (2.0 * (gamma + 1.0)),
    }
}

/// Normalized Gaussian √ρ with ρ ∝ e^{−x²/(2v)}, sampled on the mesh.
pub fn gaussian(mesh: &Mesh, variance: f64) -> Vec<f64> {
    let c = (2.0 * std::f64::consts::PI * variance).powf(-0.25);
    mesh.nodes().iter().map(|x| c * (-x * x / (4.0 * variance)).exp()).collect()
}

/// Orthonormal Hermite functions h_0..h_{k−1} of the width-λ oscillator,
/// λ^{−1/2} h_n(x/λ).
pub fn hermite_functions(mesh: &Mesh, k: usize, lambda: f64) -> Vec<Vec<f64>> {
    let xs = mesh.nodes();
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(k);
    let norm = lambda.powf(-0.5);
    for n in 0..k {
        let row = xs
            .iter()
            .enumerate()
            .map(|(j, x)| {
                let y = x / lambda;
                match n {
                    0 => norm * std::f64::consts::PI.powf(-0.25) * (-0.5 * y * y).exp(),
                    1 => 2f64.sqrt() * y * out[0][j],
                    _ => {
                        let nf = n as f64;
                        (2.0 / nf).sqrt() * y * out[n - 1][j] - ((nf - 1.0) / nf).sqrt() * out[n - 2][j]
                    }
                }
            })
            .collect();
        out.push(row);
    }
    out
}

/// Seeded corpus of orthonormal states: random rotations of Hermite
/// functions of random width, with random nonincreasing occupations in (0, 1].
pub fn random_corpus(mesh: &Mesh, count: usize, max_functions: usize, seed: u64, threads: usize) -> Result<Vec<MixedState>> {
    let built = par_map(threads, count, |t| {
        let mut rng = trial_rng(seed, t);
        let k = rng.gen_range(1..=max_functions);
        let lambda = 0.6 + 1.2 * rng.gen::<f64>();
        let basis = hermite_functions(mesh, k + 2, lambda);
        let q = random_orthogonal(&mut rng, k + 2);
        let nu = random_occupations(&mut rng, k);
        let psi = crate::mixedstate::mix(&basis, &q, &vec![1.0; k]);
        MixedState::new(nu, *mesh, psi)
    });
    built.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub pair: String,
    pub seed: u64,
    pub states: usize,
    pub min_gap: f64,
}

pub fn corpus_check(corpus: &[MixedState], pair: &LegendrePair, label: &str, seed: u64, threads: usize) -> Result<CorpusReport> {
    let gaps = par_map(threads, corpus.len(), |i| system_interp_check(&corpus[i], pair).map(|r| r.gap));
    let gaps = gaps.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(CorpusReport { pair: label.into(), seed, states: corpus.len(), min_gap: gaps.iter().copied().fold(f64::INFINITY, f64::min) })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogSobolevReport {
    pub d: u32,
    /// max over Gaussian widths of e^{−E[φ,V_φ]}/((4π)^{−d/2}∫e^{−V_φ}).
    pub value: f64,
    pub closed: f64,
    pub optimal_variance: f64,
    /// (variance, ratio) at widths away from the optimum.
    pub off_optimal: Vec<(f64, f64)>,
    /// K − ∫ρ log ρ − log((4π)^{d/2}/𝒞) at the optimal Gaussian.
    pub optimal_gap: f64,
}

/// ∫|φ′|² and ∫ρ log ρ of the 1-D Gaussian of variance v by quadrature.
fn gaussian_terms(v: f64) -> Result<(f64, f64)> {
    let cfg = QuadConfig::rel(1e-13);
    let c = (2.0 * std::f64::consts::PI * v).powf(-0.5);
    let rho = |x: f64| c * (-x * x / (2.0 * v)).exp();
    // φ = √ρ, φ′ = −x/(2v) φ.
    let k = integrate_line(|x| x * x / (4.0 * v * v) * rho(x), cfg)?.value;
    let ent = integrate_line(|x| { let r = rho(x); if r > RHO_FLOOR { r * r.ln() } else { 0.0 } }, cfg)?.value;
    Ok((k, ent))
}

/// Maximizes the first-eigenvalue quotient for F = e^{−s} over isotropic
/// Gaussians in ℝ^d, with V = −log|φ|² (so ∫e^{−V} = 1). Product structure
/// reduces every term to d copies of the 1-D one.
pub fn log_sobolev_constant_check(d: u32) -> Result<LogSobolevReport> {
    crate::constants::check_dim(d)?;
    let df = d as f64;
    let ratio = |v: f64| -> Result<f64> {
        let (k, ent) = gaussian_terms(v)?;
        // E[φ, V_φ] = K + ∫V|φ|² = d(k − ent).
        Ok(FOUR_PI.powf(0.5 * df) * (-df * (k - ent)).exp())
    };
    let f = |v: f64| ratio(v).unwrap_or(f64::NEG_INFINITY);
    let (mut lo, mut hi) = (0.05f64.ln(), 5f64.ln());
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1.exp()), f(x2.exp()));
    while hi - lo > 1e-9 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2.exp());
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1.exp());
        }
    }
    let v_opt = (0.5 * (lo + hi)).exp();
    let value = ratio(v_opt)?;
    let closed = (2.0 / std::f64::consts::E).powi(d as i32);
    let off_optimal = [0.25 * v_opt, 0.5 * v_opt, 2.0 * v_opt, 4.0 * v_opt]
        .iter()
        .map(|&v| Ok((v, ratio(v)?)))
        .collect::<Result<Vec<_>>>()?;
    let (k, ent) = gaussian_terms(v_opt)?;
    let optimal_gap = df * (k - ent) - (FOUR_PI.powf(0.5 * df) / closed).ln();
    if (value - closed).abs() > 1e-6 {
        return Err(Error::Consistency(Mismatch { context: format!("log-Sobolev constant in d = {d}"), left: value, right: closed, tolerance: 1e-6 }));
    }
    Ok(LogSobolevReport { d, value, closed, optimal_variance: v_opt, off_optimal, optimal_gap })
}

/// Gap in the sharp one-function inequality
/// ∫ρ log ρ + log((4π)^{d/2}/𝒞) ≤ ∫|∇φ|², 𝒞 = (2/e)^d, for a sampled
/// normalized φ on a 1-D mesh.
pub fn sharp_lsi_gap(mesh: &Mesh, phi: &[f64]) -> Result<f64> {
    let c = to_complex(phi);
    let n2 = mesh.norm_sq(&c);
    if (n2 - 1.0).abs() > 1e-8 {
        return Err(Error::input(format!("φ must be normalized, ‖φ‖² = {n2}")));
    }
    let state = MixedState::new(vec![1.0], *mesh, vec![c])?;
    let k = kinetic_high_order(&state);
    let ent: f64 = phi.iter().map(|p| { let r = p * p; if r > RHO_FLOOR { r * r.ln() } else { 0.0 } }).sum::<f64>() * mesh.step;
    Ok(k - ent - (FOUR_PI.sqrt() / (2.0 / std::f64::consts::E)).ln())
}

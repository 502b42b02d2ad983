//! Trace inequalities Σ F(λᵢ(V)) ≤ ∫ G(V): weight pairs, Riesz means with
//! tail control, ratio reports, the harmonic q(s) function and the Weyl
//! sweep over box potentials.

use serde::{Deserialize, Serialize};

use crate::constants::{check_dim, sharp_constant_unit};
use crate::error::{Error, Mismatch, Result};
use crate::quadrature::{integrate_to_infinity, QuadConfig};
use crate::spectra::spectrum::{box_spectrum_to_radius, lattice_defect, DEFAULT_BUDGET};
use crate::spectra::{
    dirichlet_solve, harmonic_spectrum, Decay, Potential, PotentialKind, Spectrum, SumEstimate, Weight,
};
use crate::special::{alternating_sum, gamma_ln};

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;
const FERMI_TERMS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum WeightFamily {
    /// F(s) = s^{−γ}, G(s) = 𝒞(γ) s^{d/2−γ}; f(t) = t^γ/Γ(γ).
    Power { gamma: f64 },
    /// F(s) = e^{−ts}, G(s) = (4πt)^{−d/2} e^{−ts}; f = point mass at t.
    Exponential { t: f64 },
    /// F(s) = log(1+e^{−s}), G(s) = (4π)^{−d/2} Σ (−1)^{k+1} e^{−ks} k^{−1−d/2};
    /// f = Σ (−1)^{k+1} δ(t−k) is a signed measure.
    Fermi,
    /// F(s) = (−s)_+^γ, G(s) = C_LT (−s)_+^{γ+d/2}, for negative eigenvalues.
    /// Not a Laplace pair; C_LT is supplied by the caller.
    StandardPower { gamma: f64, c_lt: f64 },
}

impl std::str::FromStr for WeightFamily {
    type Err = Error;

    /// Accepts `power`, `exp`, `fermi`, `standard`; parameters are attached by
    /// the caller through [`WeightFamily::with_params`].
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "power" => Ok(WeightFamily::Power { gamma: f64::NAN }),
            "exp" | "exponential" => Ok(WeightFamily::Exponential { t: 1.0 }),
            "fermi" => Ok(WeightFamily::Fermi),
            "standard" => Ok(WeightFamily::StandardPower { gamma: f64::NAN, c_lt: f64::NAN }),
            other => Err(Error::input(format!("unknown weight family `{other}`"))),
        }
    }
}

impl WeightFamily {
    /// Fills in γ, t and C_LT where the family uses them.
    pub fn with_params(self, gamma: Option<f64>, t: Option<f64>, c_lt: Option<f64>) -> Result<Self> {
        let need = |v: Option<f64>, name: &str| v.ok_or_else(|| Error::MissingInput(format!("this family needs {name}")));
        Ok(match self {
            WeightFamily::Power { .. } => WeightFamily::Power { gamma: need(gamma, "gamma")? },
            WeightFamily::Exponential { .. } => WeightFamily::Exponential { t: t.unwrap_or(1.0) },
            WeightFamily::Fermi => WeightFamily::Fermi,
            WeightFamily::StandardPower { .. } => WeightFamily::StandardPower {
                gamma: need(gamma, "gamma")?,
                c_lt: need(c_lt, "c_lt")?,
            },
        })
    }
}

/// A matched (F, G) pair in dimension d.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightPair {
    pub family: WeightFamily,
    pub d: u32,
    /// G's prefactor: 𝒞(γ), (4πt)^{−d/2}, (4π)^{−d/2} or C_LT.
    pub g_coefficient: f64,
}

pub fn weight_pair(family: WeightFamily, d: u32) -> Result<WeightPair> {
    check_dim(d)?;
    let half = 0.5 * d as f64;
    let g_coefficient = match family {
        WeightFamily::Power { gamma } => sharp_constant_unit(gamma, d)?,
        WeightFamily::Exponential { t } => {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::domain(format!("t must be positive, got {t}")));
            }
            (FOUR_PI * t).powf(-half)
        }
        WeightFamily::Fermi => FOUR_PI.powf(-half),
        WeightFamily::StandardPower { gamma, c_lt } => {
            crate::constants::q_standard(gamma, d)?;
            if !(c_lt > 0.0 && c_lt.is_finite()) {
                return Err(Error::domain(format!("C_LT must be positive, got {c_lt}")));
            }
            c_lt
        }
    };
    Ok(WeightPair { family, d, g_coefficient })
}

fn fermi_series(s: f64, p: f64) -> f64 {
    alternating_sum(|k| {
        let k = (k + 1) as f64;
        (-k * s).exp() * k.powf(-p)
    }, FERMI_TERMS)
}

impl WeightPair {
    fn half(&self) -> f64 {
        0.5 * self.d as f64
    }

    /// F(s).
    pub fn f(&self, s: f64) -> f64 {
        match self.family {
            WeightFamily::Power { gamma } => {
                if s > 0.0 { s.powf(-gamma) } else { f64::NAN }
            }
            WeightFamily::Exponential { t } => (-t * s).exp(),
            WeightFamily::Fermi => {
                if s >= 0.0 { (-s).exp().ln_1p() } else { -s + s.exp().ln_1p() }
            }
            WeightFamily::StandardPower { gamma, .. } => {
                if s < 0.0 { (-s).powf(gamma) } else { 0.0 }
            }
        }
    }

    /// F′(s).
    pub fn f_prime(&self, s: f64) -> f64 {
        match self.family {
            WeightFamily::Power { gamma } => -gamma * s.powf(-gamma - 1.0),
            WeightFamily::Exponential { t } => -t * (-t * s).exp(),
            WeightFamily::Fermi => -1.0 / (1.0 + s.exp()),
            WeightFamily::StandardPower { gamma, .. } => {
                if s < 0.0 { -gamma * (-s).powf(gamma - 1.0) } else { 0.0 }
            }
        }
    }

    /// G(s); NaN where G is undefined (negative arguments of the power
    /// and Fermi families).
    pub fn g(&self, s: f64) -> f64 {
        let c = self.g_coefficient;
        match self.family {
            WeightFamily::Power { gamma } => {
                if s > 0.0 { c * s.powf(self.half() - gamma) } else { f64::NAN }
            }
            WeightFamily::Exponential { t } => c * (-t * s).exp(),
            WeightFamily::Fermi => {
                if s >= 0.0 { c * fermi_series(s, 1.0 + self.half()) } else { f64::NAN }
            }
            WeightFamily::StandardPower { gamma, .. } => {
                if s < 0.0 { c * (-s).powf(gamma + self.half()) } else { 0.0 }
            }
        }
    }

    /// G′(s).
    pub fn g_prime(&self, s: f64) -> f64 {
        let c = self.g_coefficient;
        let half = self.half();
        match self.family {
            WeightFamily::Power { gamma } => c * (half - gamma) * s.powf(half - gamma - 1.0),
            WeightFamily::Exponential { t } => -t * c * (-t * s).exp(),
            WeightFamily::Fermi => {
                if s >= 0.0 { -c * fermi_series(s, half) } else { f64::NAN }
            }
            WeightFamily::StandardPower { gamma, .. } => {
                if s < 0.0 { -c * (gamma + half) * (-s).powf(gamma + half - 1.0) } else { 0.0 }
            }
        }
    }

    /// Human-readable description of the measure f.
    pub fn f_descriptor(&self) -> String {
        match self.family {
            WeightFamily::Power { gamma } => format!("density t^{gamma}/Γ({gamma})"),
            WeightFamily::Exponential { t } => format!("point mass at t = {t}"),
            WeightFamily::Fermi => "signed point masses Σ(−1)^(k+1) δ(t−k)".into(),
            WeightFamily::StandardPower { .. } => "none (not a Laplace pair)".into(),
        }
    }

    /// Whether f is a nonnegative measure, as the general trace theorem needs.
    pub fn within_hypotheses(&self) -> bool {
        matches!(self.family, WeightFamily::Power { .. } | WeightFamily::Exponential { .. })
    }

    /// F(s) = ∫ e^{−ts} f(t) dt/t evaluated from the measure f, independently
    /// of the closed form.
    pub fn laplace_f(&self, s: f64) -> Result<f64> {
        self.laplace(s, 0.0)
    }

    /// G(s) = ∫ e^{−ts} (4πt)^{−d/2} f(t) dt/t from the measure f.
    pub fn laplace_g(&self, s: f64) -> Result<f64> {
        self.laplace(s, self.half())
    }

    fn laplace(&self, s: f64, heat_power: f64) -> Result<f64> {
        let kernel = |t: f64| (-t * s).exp() * (FOUR_PI * t).powf(-heat_power);
        match self.family {
            WeightFamily::Power { gamma } => {
                if !(s > 0.0) {
                    return Err(Error::domain("the Laplace integral needs s > 0"));
                }
                let ln_g = gamma_ln(gamma)?;
                // Substitute t = u^{1/a}, a = γ − heat_power, to remove the t→0 power.
                let a = gamma - heat_power;
                let q = integrate_to_infinity(
                    |u: f64| {
                        let t = u.powf(1.0 / a);
                        (-t * s).exp() * FOUR_PI.powf(-heat_power) / a
                    },
                    0.0,
                    QuadConfig::rel(1e-12),
                )?;
                Ok(q.value / ln_g.exp())
            }
            WeightFamily::Exponential { t } => Ok(kernel(t)),
            WeightFamily::Fermi => {
                if s < 0.0 {
                    return Err(Error::domain("the Fermi series needs s ≥ 0"));
                }
                Ok(alternating_sum(|k| {
                    let k = (k + 1) as f64;
                    kernel(k) / k
                }, FERMI_TERMS))
            }
            WeightFamily::StandardPower { .. } => Err(Error::domain("the standard power weight is not a Laplace pair")),
        }
    }
}

impl Weight for WeightPair {
    fn eval(&self, s: f64) -> f64 {
        self.f(s)
    }

    fn decay(&self) -> Decay {
        match self.family {
            WeightFamily::Power { gamma } => Decay::Power(gamma),
            WeightFamily::Exponential { t } => Decay::Exponential(t),
            // −(log F)′ ≥ 1/(2 log 2) > 0.7 on s ≥ 0.
            WeightFamily::Fermi => Decay::Exponential(0.7),
            WeightFamily::StandardPower { .. } => Decay::Vanishing,
        }
    }
}

/// Σ F(λᵢ) over the spectrum with tail control.
pub fn riesz_mean(s: &Spectrum, w: &WeightPair, tol: f64) -> Result<SumEstimate> {
    if let WeightFamily::Power { .. } = w.family {
        if s.eigenvalues.first().is_some_and(|l| *l <= 0.0) {
            return Err(Error::domain("s^{−γ} weights need positive eigenvalues"));
        }
    }
    s.weighted_sum(w, tol)
}

/// Numerical settings for spectra that have no closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub n_eigs: usize,
    pub n_grid: usize,
    /// Levels enumerated for closed-form spectra.
    pub cutoff: u64,
    pub tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { n_eigs: 100, n_grid: 4000, cutoff: 2000, tol: 1e-10 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub potential: Potential,
    pub weight: WeightPair,
    pub spectrum_source: String,
    pub lhs: f64,
    pub lhs_error: f64,
    pub rhs: f64,
    pub rhs_error: f64,
    pub ratio: f64,
    /// 1 − ratio.
    pub margin: f64,
    /// Discretization allowance on the ratio (0 for closed-form spectra).
    pub allowance: f64,
    pub holds: bool,
    /// False when f is a signed measure (outside the general theorem).
    pub within_hypotheses: bool,
}

/// Weyl exponent of λ_k in k for the potential's growth class.
fn weyl_exponent(v: &Potential) -> Option<f64> {
    let d = v.d as f64;
    match v.kind {
        PotentialKind::Harmonic { .. } => Some(1.0 / d),
        PotentialKind::Power { p, .. } => Some(2.0 * p / (d * (p + 2.0))),
        PotentialKind::Box { .. } | PotentialKind::Well { .. } | PotentialKind::Sampled(_) => Some(2.0 / d),
        PotentialKind::Sech2 { .. } => None,
    }
}

fn numeric_spectrum(v: &Potential, cfg: &SolverConfig, n_grid: usize) -> Result<Spectrum> {
    let s = dirichlet_solve(v, cfg.n_eigs, n_grid)?;
    match weyl_exponent(v) {
        Some(e) if cfg.n_eigs >= 10 => {
            let d = (2.0 / e).round().max(1.0) as u32;
            let mut s = s.with_weyl_tail(d)?;
            if let crate::spectra::TailModel::PowerLaw { exponent, .. } = &mut s.tail {
                *exponent = e;
            }
            Ok(s)
        }
        _ => Ok(s),
    }
}

/// Computes both sides of Σ F(λᵢ(V)) ≤ ∫ G(V) and their ratio.
pub fn verify_trace_inequality(v: &Potential, w: &WeightPair, cfg: &SolverConfig) -> Result<TraceReport> {
    if v.d != w.d {
        return Err(Error::input(format!("potential is {}-dimensional but the weight pair is for d = {}", v.d, w.d)));
    }
    match w.family {
        WeightFamily::Power { .. } | WeightFamily::Fermi if v.min_value() < 0.0 => {
            return Err(Error::domain("this weight pair needs V ≥ 0"));
        }
        _ => {}
    }
    let (spectrum, source, allowance_lhs) = match v.kind {
        PotentialKind::Harmonic { a, b } => (harmonic_spectrum(a, b, v.d, cfg.cutoff)?, "closed_form", 0.0),
        PotentialKind::Box { eps } => {
            let r = box_radius_for(v.d, cfg.cutoff);
            (box_spectrum_to_radius(eps, v.d, r, DEFAULT_BUDGET)?, "closed_form", 0.0)
        }
        _ if v.d == 1 => {
            let fine = numeric_spectrum(v, cfg, cfg.n_grid)?;
            let coarse = numeric_spectrum(v, cfg, cfg.n_grid / 2)?;
            let lf = riesz_mean(&fine, w, cfg.tol)?.value;
            let lc = riesz_mean(&coarse, w, cfg.tol)?.value;
            // Richardson estimate of the O(h²) error at the fine grid.
            (fine, "finite_difference", (lf - lc).abs() / 3.0)
        }
        _ => {
            return Err(Error::domain(
                "numerical spectra are one-dimensional; in d ≥ 2 use the harmonic or box closed forms",
            ))
        }
    };
    let lhs = riesz_mean(&spectrum, w, cfg.tol)?;
    let rhs = v.integrate(|s| w.g(s), QuadConfig::rel(cfg.tol.max(1e-13)))?;
    let ratio = lhs.value / rhs.value;
    let allowance = (allowance_lhs + lhs.error_bound) / rhs.value + rhs.error / rhs.value * ratio;
    Ok(TraceReport {
        potential: v.clone(),
        weight: *w,
        spectrum_source: source.into(),
        lhs: lhs.value,
        lhs_error: lhs.error_bound + allowance_lhs,
        rhs: rhs.value,
        rhs_error: rhs.error,
        ratio,
        margin: 1.0 - ratio,
        allowance,
        holds: ratio <= 1.0 + allowance,
        within_hypotheses: w.within_hypotheses(),
    })
}

fn box_radius_for(d: u32, cutoff: u64) -> u64 {
    // |n|² bound giving roughly `cutoff` levels.
    let df = d as f64;
    let k = crate::special::sphere_area(d) / df / 2f64.powi(d as i32);
    ((cutoff as f64 / k).powf(2.0 / df).ceil() as u64).max(d as u64)
}

/// (t/sinh t)^d evaluated without overflow.
fn t_over_sinh(x: f64) -> f64 {
    if x < 1e-4 {
        1.0 - x * x / 6.0
    } else if x < 20.0 {
        x / x.sinh()
    } else {
        2.0 * x * (-x).exp() / (1.0 - (-2.0 * x).exp())
    }
}

/// q(s) = s^d/Γ(γ−d) ∫₀^∞ t^{γ−1} e^{−t} sinh(st)^{−d} dt for γ > d.
///
/// Rewritten as (1/Γ(γ−d+1)) ∫₀^∞ e^{−t} (st/sinh st)^d du with t = u^{1/(γ−d)},
/// which removes the t → 0 singularity.
pub fn harmonic_q(s: f64, gamma: f64, d: u32) -> Result<crate::quadrature::Quad> {
    check_dim(d)?;
    let df = d as f64;
    if !(gamma > df) {
        return Err(Error::domain(format!("q(s) needs gamma > d, got gamma = {gamma}, d = {d}")));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("s must be positive, got {s}")));
    }
    let a = gamma - df;
    let norm = gamma_ln(a + 1.0)?.exp();
    let q = integrate_to_infinity(
        |u: f64| {
            let t = u.powf(1.0 / a);
            (-t).exp() * t_over_sinh(s * t).powi(d as i32)
        },
        0.0,
        QuadConfig { abs_tol: 1e-15, rel_tol: 1e-12, max_intervals: 4000 },
    )?;
    Ok(crate::quadrature::Quad { value: q.value / norm, error: q.error / norm, evaluations: q.evaluations })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeylRow {
    pub eps: f64,
    pub lhs: f64,
    pub lhs_error: f64,
    pub rhs: f64,
    pub ratio: f64,
    /// Guaranteed ratio deficit: ratio ≥ 1 − delta.
    pub delta: f64,
}

/// Ratio of Σ (1+ε²|n|²)^{−γ} to 𝒞(γ)(π/ε)^d along a list of ε.
///
/// The lower bound 1 − δ(ε) comes from comparing the lattice sum with the
/// integral over the orthant shifted by one cell in each direction.
pub fn weyl_sweep(gamma: f64, d: u32, eps_list: &[f64]) -> Result<Vec<WeylRow>> {
    let w = weight_pair(WeightFamily::Power { gamma }, d)?;
    if eps_list.is_empty() {
        return Err(Error::input("eps list is empty"));
    }
    if eps_list.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
        return Err(Error::domain("every eps must be positive"));
    }
    if eps_list.windows(2).any(|p| !(p[1] < p[0])) {
        return Err(Error::input("eps list must be strictly decreasing"));
    }
    let c = sharp_constant_unit(gamma, d)?;
    let df = d as f64;
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        // Radius where the tail bracket is small relative to the sum.
        let scale = 10f64.powf((10.0 / (2.0 * gamma - df)).min(3.0) / df);
        let radius = (scale / eps).max(4.0);
        let spectrum = box_spectrum_to_radius(eps, d, (radius * radius).ceil() as u64, DEFAULT_BUDGET)?;
        let sum = riesz_mean(&spectrum, &w, 1e-12)?;
        let rhs = c * (std::f64::consts::PI / eps).powf(df);
        let delta = lattice_defect(&w, eps, d)? / rhs;
        let ratio = sum.value / rhs;
        let err = sum.error_bound / rhs;
        if ratio > 1.0 + err {
            return Err(Error::Consistency(Mismatch { context: format!("Weyl ratio above 1 at eps = {eps}"), left: ratio, right: 1.0, tolerance: err }));
        }
        rows.push(WeylRow { eps, lhs: sum.value, lhs_error: sum.error_bound, rhs, ratio, delta });
    }
    let last = rows.last().expect("nonempty");
    if last.ratio < 1.0 - last.delta - last.lhs_error / last.rhs {
        return Err(Error::Consistency(Mismatch {
            context: format!("final Weyl ratio below its lower bound at eps = {}", last.eps),
            left: last.ratio,
            right: 1.0 - last.delta,
            tolerance: last.lhs_error / last.rhs,
        }));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::ZETA_3;

    #[test]
    fn pair_coefficients() {
        let p = weight_pair(WeightFamily::Power { gamma: 2.0 }, 1).unwrap();
        assert!((p.g_coefficient - 0.25).abs() < 1e-15);
        let e = weight_pair(WeightFamily::Exponential { t: 1.0 }, 2).unwrap();
        assert!((e.g(0.0) - 1.0 / FOUR_PI).abs() < 1e-15);
        let f = weight_pair(WeightFamily::Fermi, 2).unwrap();
        let want = std::f64::consts::PI.powi(2) / 12.0 / FOUR_PI;
        assert!((f.g(0.0) - want).abs() < 1e-14);
        assert!((want - 0.065_450).abs() < 1e-6);
        assert!(matches!(weight_pair(WeightFamily::Power { gamma: 0.5 }, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn laplace_consistency() {
        for gamma in [1.5, 2.0, 3.5] {
            let p = weight_pair(WeightFamily::Power { gamma }, 1).unwrap();
            for s in [0.5, 1.0, 2.0] {
                assert!((p.laplace_f(s).unwrap() - p.f(s)).abs() < 1e-8 * p.f(s));
                assert!((p.laplace_g(s).unwrap() - p.g(s)).abs() < 1e-8 * p.g(s));
            }
        }
        let f = weight_pair(WeightFamily::Fermi, 3).unwrap();
        for s in [0.0, 0.7, 3.0] {
            assert!((f.laplace_f(s).unwrap() - f.f(s)).abs() < 1e-12);
            assert!((f.laplace_g(s).unwrap() - f.g(s)).abs() < 1e-12);
        }
    }

    #[test]
    fn fermi_decay_rate_certified() {
        let f = weight_pair(WeightFamily::Fermi, 1).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..4000 {
            let s = i as f64 * 0.01;
            let v = f.f(s) * (0.7 * s).exp();
            assert!(v <= prev * (1.0 + 1e-14));
            prev = v;
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let fams = [
            WeightFamily::Power { gamma: 2.0 },
            WeightFamily::Exponential { t: 1.3 },
            WeightFamily::Fermi,
        ];
        for fam in fams {
            let w = weight_pair(fam, 1).unwrap();
            for s in [0.4, 1.0, 2.5] {
                let h = 1e-5;
                let fd = (w.f(s + h) - w.f(s - h)) / (2.0 * h);
                assert!((fd - w.f_prime(s)).abs() < 1e-7 * (1.0 + fd.abs()));
                let gd = (w.g(s + h) - w.g(s - h)) / (2.0 * h);
                assert!((gd - w.g_prime(s)).abs() < 1e-7 * (1.0 + gd.abs()));
            }
        }
    }

    #[test]
    fn single_level_power() {
        let s = Spectrum::from_levels(&[1.0], crate::spectra::TailModel::Discrete { remaining: 0, floor: 1.0 }).unwrap();
        for gamma in [1.0, 2.0, 7.5] {
            let w = weight_pair(WeightFamily::Power { gamma }, 1).unwrap();
            assert_eq!(riesz_mean(&s, &w, 1e-12).unwrap().value, 1.0);
        }
    }

    #[test]
    fn harmonic_exponential_ratio() {
        let v = Potential::harmonic(1.0, 0.0, 1).unwrap();
        let w = weight_pair(WeightFamily::Exponential { t: 1.0 }, 1).unwrap();
        let r = verify_trace_inequality(&v, &w, &SolverConfig::default()).unwrap();
        assert!((r.lhs - 1.0 / (2.0 * 1f64.sinh())).abs() < 1e-12);
        assert!((r.rhs - 0.5).abs() < 1e-11);
        assert!((r.ratio - 0.850_918).abs() < 1e-6);
        assert!(r.holds && r.within_hypotheses);
    }

    #[test]
    fn q_function_values() {
        let q = harmonic_q(1.0, 3.0, 1).unwrap();
        assert!((q.value - ZETA_3 / 2.0).abs() < 1e-9);
        assert!(harmonic_q(0.01, 3.0, 1).unwrap().value > 0.999);
        assert!(matches!(harmonic_q(1.0, 1.0, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn weyl_first_row() {
        let rows = weyl_sweep(2.0, 1, &[1.0, 0.1, 0.01]).unwrap();
        assert!((rows[0].ratio - 0.390_676_970_895_379).abs() < 1e-9);
        assert!(rows.windows(2).all(|w| w[1].ratio > w[0].ratio));
        assert!(rows[2].ratio >= 0.98);
        assert!((rows[0].rhs - std::f64::consts::PI / 4.0).abs() < 1e-14);
    }

    #[test]
    fn weyl_two_dimensional_and_budget() {
        let rows = weyl_sweep(2.0, 2, &[1.0, 0.3]).unwrap();
        assert!(rows.iter().all(|r| r.ratio <= 1.0 && r.ratio >= 1.0 - r.delta - 1e-9));
        assert!(matches!(weyl_sweep(2.0, 2, &[1e-4]), Err(Error::Resource(_))));
    }
}

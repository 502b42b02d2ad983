//! Heat traces and the Golden–Thompson right-hand side.

use serde::{Deserialize, Serialize};

use super::potential::Potential;
use super::solver::Hamiltonian1d;
use super::spectrum::{Decay, Spectrum, SumEstimate, Weight};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, Quad, QuadConfig};

/// The weight e^{−ts}.
#[derive(Debug, Clone, Copy)]
pub struct HeatWeight(pub f64);

impl Weight for HeatWeight {
    fn eval(&self, s: f64) -> f64 {
        (-self.0 * s).exp()
    }

    fn decay(&self) -> Decay {
        Decay::Exponential(self.0)
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("t must be positive, got {t}")));
    }
    Ok(())
}

/// Tr e^{−tH} = Σ e^{−tλᵢ} plus the tail-model remainder.
pub fn heat_trace(s: &Spectrum, t: f64, tol: f64) -> Result<SumEstimate> {
    check_t(t)?;
    s.weighted_sum(&HeatWeight(t), tol)
}

/// (4πt)^{−d/2} ∫ e^{−tV(x)} dx.
pub fn gt_rhs(v: &Potential, t: f64) -> Result<Quad> {
    check_t(t)?;
    let pref = (4.0 * std::f64::consts::PI * t).powf(-0.5 * v.d as f64);
    let q = v.integrate(|x| (-t * x).exp(), QuadConfig::rel(1e-12))?;
    Ok(Quad {
        value: pref * q.value,
        error: pref * q.error,
        evaluations: q.evaluations,
    })
}

/// Closed form e^{−Bt}/(2 sinh At)^d of the harmonic heat trace.
pub fn harmonic_heat_trace(a: f64, b: f64, d: u32, t: f64) -> f64 {
    (-b * t).exp() / (2.0 * (a * t).sinh()).powi(d as i32)
}

/// Relative excess of the lattice heat-kernel diagonal over (4πt)^{−1/2},
/// scaled by t/h²: ((4πt)^{1/2} K_h(t; x, x) − 1)·t/h². Tends to 1/16.
pub fn lattice_kernel_constant(t: f64, h: f64) -> Result<f64> {
    check_t(t)?;
    let a = 2.0 * t / (h * h);
    // h K_h = (1/π) ∫_0^π e^{−a(1−cos θ)} dθ; 1 − cos θ = 2 sin²(θ/2).
    let q = integrate(|th: f64| (-2.0 * a * (0.5 * th).sin().powi(2)).exp(), 0.0, std::f64::consts::PI, QuadConfig::rel(1e-14))?;
    let ratio = q.value / std::f64::consts::PI * (4.0 * std::f64::consts::PI * t).sqrt() / h;
    Ok((ratio - 1.0) * t / (h * h))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GtRow {
    pub n_grid: usize,
    pub h: f64,
    pub trace: f64,
    /// Bound on the omitted part of the trace.
    pub trace_tail: f64,
    pub ratio: f64,
    /// (Tr e^{−tH_h} − reference)/gt_rhs.
    pub excess: f64,
    /// c with Tr ≤ gt_rhs (1 + c h²/t) from the lattice kernel.
    pub lattice_c: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GtStudy {
    pub t: f64,
    pub domain: (f64, f64),
    pub gt_rhs: f64,
    pub reference: f64,
    pub reference_source: String,
    pub rows: Vec<GtRow>,
    /// excess(h)/excess(h/2) for consecutive grids.
    pub reduction_factors: Vec<f64>,
}

/// Tr e^{−tH_h} for the finite-difference operator on [a, b] over a sequence
/// of grids, against the Golden–Thompson bound (4πt)^{−1/2}∫e^{−tV}. The
/// continuum trace `reference` defaults to Richardson extrapolation of the
/// two finest grids.
pub fn discrete_gt_study(v: &Potential, domain: (f64, f64), t: f64, grids: &[usize], reference: Option<f64>) -> Result<GtStudy> {
    check_t(t)?;
    if v.d != 1 {
        return Err(Error::domain("the discrete Golden–Thompson study is one-dimensional"));
    }
    if grids.len() < 2 {
        return Err(Error::domain("need at least two grids"));
    }
    let rhs = gt_rhs(v, t)?.value;
    let (a, b) = domain;
    let mut traces = Vec::new();
    for &n in grids {
        let ham = Hamiltonian1d::dirichlet(|x| v.value(x), a, b, n)?;
        // Levels with e^{−tλ} ≥ 1e−18 Tr; the rest is bounded by n e^{−tΛ}.
        let lam0 = ham.lowest(1)?[0];
        let cut = lam0 + 45.0 / t;
        let levels = ham.matrix.below(cut)?;
        let trace: f64 = levels.iter().map(|l| (-t * l).exp()).sum();
        let tail = (n - levels.len()) as f64 * (-t * cut).exp();
        traces.push((n, ham.h, trace, tail));
    }
    let (reference, reference_source) = match reference {
        Some(r) => (r, "supplied".to_string()),
        None => {
            let k = traces.len();
            let (_, h1, t1, _) = traces[k - 2];
            let (_, h2, t2, _) = traces[k - 1];
            let r = (h1 * h1 * t2 - h2 * h2 * t1) / (h1 * h1 - h2 * h2);
            (r, "richardson".to_string())
        }
    };
    let mut rows = Vec::new();
    for (n, h, trace, tail) in traces {
        let c = lattice_kernel_constant(t, h)?;
        let ratio = trace / rhs;
        rows.push(GtRow {
            n_grid: n,
            h,
            trace,
            trace_tail: tail,
            ratio,
            excess: (trace - reference) / rhs,
            lattice_c: c,
            holds: (trace + tail) / rhs <= 1.0 + c.max(0.0) * h * h / t,
        });
    }
    let reduction_factors = rows.windows(2).map(|w| w[0].excess / w[1].excess).collect();
    Ok(GtStudy { t, domain, gt_rhs: rhs, reference, reference_source, rows, reduction_factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::spectrum::harmonic_spectrum;

    #[test]
    fn harmonic_trace_matches_closed_form() {
        let s = harmonic_spectrum(1.0, 0.0, 1, 20).unwrap();
        let e = heat_trace(&s, 1.0, 1e-12).unwrap();
        assert!((e.value - harmonic_heat_trace(1.0, 0.0, 1, 1.0)).abs() < 1e-12);
        assert!((e.value - 0.425_459).abs() < 1e-6);
        let s1 = harmonic_spectrum(1.0, 1.0, 1, 20).unwrap();
        let e1 = heat_trace(&s1, 1.0, 1e-12).unwrap();
        assert!((e1.value - (-1f64).exp() * e.value).abs() < 1e-13);
    }

    #[test]
    fn long_time_ground_state_dominates() {
        let s = harmonic_spectrum(1.0, 0.0, 2, 20).unwrap();
        let t = 30.0;
        let e = heat_trace(&s, t, 1e-300).unwrap();
        assert!((e.value / (-t * 2.0).exp() - 1.0).abs() < 1e-20f64.max(1e-12));
    }

    #[test]
    fn gt_rhs_gaussian() {
        let v = Potential::harmonic(1.0, 0.0, 1).unwrap();
        assert!((gt_rhs(&v, 1.0).unwrap().value - 0.5).abs() < 1e-11);
        assert!((gt_rhs(&v, 2.0).unwrap().value - 0.25).abs() < 1e-11);
        let w = Potential::harmonic(1.5, 0.3, 2).unwrap();
        let want = (-0.3f64).exp() / 9.0;
        assert!((gt_rhs(&w, 1.0).unwrap().value - want).abs() < 1e-10 * want);
    }

    #[test]
    fn nonpositive_time_rejected() {
        let v = Potential::harmonic(1.0, 0.0, 1).unwrap();
        assert!(matches!(gt_rhs(&v, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn lattice_constant_tends_to_sixteenth() {
        let c = lattice_kernel_constant(1.0, 0.01).unwrap();
        assert!((c - 1.0 / 16.0).abs() < 1e-3, "{c}");
    }

    #[test]
    fn discrete_gt_converges() {
        let v = Potential::harmonic(1.0, 0.0, 1).unwrap();
        let exact = harmonic_heat_trace(1.0, 0.0, 1, 1.0);
        let s = discrete_gt_study(&v, (-12.0, 12.0), 1.0, &[199, 399, 799, 1599], Some(exact)).unwrap();
        assert!(s.rows.iter().all(|r| r.holds));
        for f in &s.reduction_factors {
            assert!((f - 4.0).abs() < 0.8, "{f}");
        }
    }
}

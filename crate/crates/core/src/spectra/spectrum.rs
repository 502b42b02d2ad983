//! Spectra with multiplicities and tail models, closed-form spectra, and
//! weighted sums Σ F(λᵢ) with two-sided remainder bounds.

use serde::{Deserialize, Serialize};

use super::tridiag::CLUSTER_TOL;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_to_infinity, QuadConfig};
use crate::special::{binomial, gamma_ln, sphere_area};

/// Default cap on the lattice/shell enumeration work for closed-form spectra.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// How a decreasing weight F decays at +∞; decides summability of tails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// F(s) = K s^{−p} exactly for s > 0.
    Power(f64),
    /// F(s) e^{rs} is nonincreasing for s ≥ 0.
    Exponential(f64),
    /// F(s) = 0 for s ≥ 0.
    Vanishing,
}

/// A nonincreasing weight F used in Riesz-type sums.
pub trait Weight {
    fn eval(&self, s: f64) -> f64;
    fn decay(&self) -> Decay;
}

/// What is known about the levels beyond the computed ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum TailModel {
    /// Nothing is known; sums needing a remainder fail.
    Unknown,
    /// Finite operator: `remaining` further levels, all ≥ `floor`.
    Discrete { remaining: u64, floor: f64 },
    /// Box levels 1 + ε²|n|², n ∈ ℕ*^d, enumerated for |n|² ≤ radius_sq.
    Lattice { eps: f64, d: u32, radius_sq: u64 },
    /// Harmonic shells b + a(2k+d) with multiplicity C(k+d−1, d−1), k ≥ next_shell.
    Harmonic { a: f64, b: f64, d: u32, next_shell: u64 },
    /// Weyl-type tail λ_k ≈ c k^{exponent} for k > count, within relative mismatch.
    PowerLaw { c: f64, exponent: f64, count: u64, mismatch: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Distinct levels, ascending.
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<u64>,
    /// Number of computed levels counted with multiplicity.
    pub truncation: u64,
    pub tail: TailModel,
}

/// A value with a two-sided bound on the neglected remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SumEstimate {
    pub value: f64,
    pub partial: f64,
    pub remainder_lo: f64,
    pub remainder_hi: f64,
    /// Half-width of the remainder bracket plus summation round-off.
    pub error_bound: f64,
}

impl Spectrum {
    /// Groups sorted levels into clusters within 1e−9·(1+|λ|).
    pub fn from_levels(levels: &[f64], tail: TailModel) -> Result<Self> {
        if levels.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("non-finite eigenvalue"));
        }
        if levels.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::input("eigenvalues must be nondecreasing"));
        }
        let mut eigenvalues: Vec<f64> = Vec::new();
        let mut multiplicities: Vec<u64> = Vec::new();
        let mut anchor = f64::NAN;
        for &v in levels {
            if !eigenvalues.is_empty() && (v - anchor).abs() <= CLUSTER_TOL * (1.0 + anchor.abs()) {
                *multiplicities.last_mut().expect("nonempty") += 1;
            } else {
                eigenvalues.push(v);
                multiplicities.push(1);
                anchor = v;
            }
        }
        let truncation = levels.len() as u64;
        Ok(Self { eigenvalues, multiplicities, truncation, tail })
    }

    /// Levels expanded with multiplicity.
    pub fn levels(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(v, m)| std::iter::repeat(*v).take(*m as usize))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.eigenvalues.len() != self.multiplicities.len() {
            return Err(Error::input("eigenvalues and multiplicities differ in length"));
        }
        if self.multiplicities.iter().any(|m| *m == 0) {
            return Err(Error::input("multiplicities must be at least 1"));
        }
        if self.eigenvalues.windows(2).any(|w| !(w[1] >= w[0])) || self.eigenvalues.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("eigenvalues must be finite and nondecreasing"));
        }
        if self.truncation != self.multiplicities.iter().sum::<u64>() {
            return Err(Error::input("truncation must equal the total multiplicity"));
        }
        Ok(())
    }

    /// Fits λ_k ≈ c k^{2/d} on the last decade of computed indices and
    /// installs it as the tail model.
    pub fn with_weyl_tail(mut self, d: u32) -> Result<Self> {
        let levels = self.levels();
        let n = levels.len();
        if n < 10 {
            return Err(Error::input("a Weyl tail fit needs at least 10 levels"));
        }
        let e = 2.0 / d as f64;
        let start = n - n / 10 - 1;
        let (mut num, mut den) = (0.0, 0.0);
        for (k, lam) in levels.iter().enumerate().skip(start) {
            let kp = ((k + 1) as f64).powf(e);
            num += lam * kp;
            den += kp * kp;
        }
        let c = num / den;
        if !(c > 0.0) {
            return Err(Error::input("Weyl tail fit produced a nonpositive prefactor"));
        }
        let mismatch = levels
            .iter()
            .enumerate()
            .skip(start)
            .map(|(k, lam)| (lam / (c * ((k + 1) as f64).powf(e)) - 1.0).abs())
            .fold(0.0, f64::max);
        self.tail = TailModel::PowerLaw { c, exponent: e, count: n as u64, mismatch };
        Ok(self)
    }

    /// Σ F(λᵢ) over all levels, with the tail handled by the model.
    pub fn weighted_sum(&self, w: &dyn Weight, tol: f64) -> Result<SumEstimate> {
        self.validate()?;
        let mut partial = 0.0;
        let mut comp = 0.0;
        // Sum from the top so small terms accumulate first.
        for (v, m) in self.eigenvalues.iter().zip(&self.multiplicities).rev() {
            let term = *m as f64 * w.eval(*v);
            let y = term - comp;
            let t = partial + y;
            comp = (t - partial) - y;
            partial = t;
        }
        let (lo, hi) = self.remainder(w, tol)?;
        let roundoff = 4.0 * f64::EPSILON * partial.abs() * (1.0 + (self.eigenvalues.len() as f64).log2());
        Ok(SumEstimate {
            value: partial + 0.5 * (lo + hi),
            partial,
            remainder_lo: lo,
            remainder_hi: hi,
            error_bound: 0.5 * (hi - lo) + roundoff,
        })
    }

    fn remainder(&self, w: &dyn Weight, tol: f64) -> Result<(f64, f64)> {
        let last = self.eigenvalues.last().copied();
        if matches!(w.decay(), Decay::Vanishing) {
            let floor = match &self.tail {
                TailModel::Discrete { floor, .. } => Some(*floor),
                TailModel::Lattice { .. } => Some(1.0),
                TailModel::Harmonic { a, b, d, next_shell } => Some(b + a * (2.0 * *next_shell as f64 + *d as f64)),
                TailModel::PowerLaw { .. } => last,
                TailModel::Unknown => None,
            };
            if let Some(f) = floor {
                if f >= 0.0 {
                    return Ok((0.0, 0.0));
                }
            }
        }
        let cfg = QuadConfig { abs_tol: 1e-300, rel_tol: 1e-12, max_intervals: 2000 };
        match &self.tail {
            TailModel::Unknown => {
                let tail_term = last.map_or(f64::INFINITY, |l| w.eval(l));
                if tail_term.abs() <= tol * 1e-6 {
                    // Nothing rigorous to say; report the last term as the scale.
                    Ok((0.0, tail_term.abs()))
                } else {
                    Err(Error::Truncation(
                        "spectrum has no tail model and the weight is not negligible at the last level".into(),
                    ))
                }
            }
            TailModel::Discrete { remaining, floor } => Ok((0.0, *remaining as f64 * w.eval(*floor))),
            TailModel::Lattice { eps, d, radius_sq } => lattice_remainder(w, *eps, *d, *radius_sq, cfg),
            TailModel::Harmonic { a, b, d, next_shell } => harmonic_remainder(w, *a, *b, *d, *next_shell, cfg),
            TailModel::PowerLaw { c, exponent, count, mismatch } => {
                let e = *exponent;
                match w.decay() {
                    Decay::Power(p) if p * e <= 1.0 => {
                        return Err(Error::Divergence(format!(
                            "Σ λ_k^{{-{p}}} with λ_k ~ k^{e} diverges"
                        )))
                    }
                    _ => {}
                }
                let n = *count as f64;
                // F(c(1±δ)k^e) brackets the true terms; integrals bracket the sums.
                let lo_f = |k: f64| w.eval(c * (1.0 + mismatch) * k.powf(e));
                let hi_f = |k: f64| w.eval(c * (1.0 - mismatch).max(0.0) * k.powf(e));
                let lo = integrate_to_infinity(lo_f, n + 1.0, cfg)?.value;
                let hi = integrate_to_infinity(hi_f, n, cfg)?.value;
                Ok((lo, hi))
            }
        }
    }
}

fn lattice_remainder(w: &dyn Weight, eps: f64, d: u32, radius_sq: u64, cfg: QuadConfig) -> Result<(f64, f64)> {
    if let Decay::Power(p) = w.decay() {
        if 2.0 * p <= d as f64 {
            return Err(Error::Divergence(format!(
                "Σ (1+ε²|n|²)^{{-{p}}} over ℕ*^{d} diverges (needs 2p > d)"
            )));
        }
    }
    let f = |r: f64| w.eval(1.0 + eps * eps * r * r);
    let df = d as f64;
    if d == 1 {
        // Terms n ≥ N+1 with f decreasing.
        let n_last = (radius_sq as f64).sqrt().floor();
        let lo = integrate_to_infinity(f, n_last + 1.0, cfg)?.value;
        let hi = integrate_to_infinity(f, n_last, cfg)?.value;
        return Ok((lo, hi));
    }
    let orthant = |r0: f64, dim: u32| -> Result<f64> {
        let k = sphere_area(dim) / 2f64.powi(dim as i32);
        let r0 = r0.max(0.0);
        Ok(k * integrate_to_infinity(|r| f(r) * r.powi(dim as i32 - 1), r0, cfg)?.value)
    };
    let r_out = ((radius_sq + 1) as f64).sqrt();
    let hi = orthant(r_out - df.sqrt(), d)?;
    let r2 = r_out + df.sqrt();
    let slab = orthant(r2 - 1.0, d - 1)?;
    let lo = (orthant(r2, d)? - df * slab).max(0.0);
    Ok((lo, hi))
}

/// Lower bound for Σ_{n ∈ ℕ*^d} F(1+ε²|n|²) relative to its orthant integral:
/// the sum is at least the integral minus `d·slab`, returned here.
pub fn lattice_defect(w: &dyn Weight, eps: f64, d: u32) -> Result<f64> {
    let cfg = QuadConfig { abs_tol: 1e-300, rel_tol: 1e-12, max_intervals: 2000 };
    let f = |r: f64| w.eval(1.0 + eps * eps * r * r);
    if d == 1 {
        return Ok(f(0.0));
    }
    let k = sphere_area(d - 1) / 2f64.powi(d as i32 - 1);
    let slab = k * integrate_to_infinity(|r| f(r) * r.powi(d as i32 - 2), 0.0, cfg)?.value;
    Ok(d as f64 * slab)
}

fn shell_multiplicity(x: f64, d: u32) -> f64 {
    // C(x+d−1, d−1) extended to real x.
    (1..d).fold(1.0, |acc, j| acc * (x + j as f64) / j as f64)
}

fn harmonic_remainder(w: &dyn Weight, a: f64, b: f64, d: u32, next: u64, cfg: QuadConfig) -> Result<(f64, f64)> {
    let df = d as f64;
    let level = |x: f64| b + a * (2.0 * x + df);
    // Shift so the shell index where g is certified decreasing is reached.
    let c = 0.5 * (b / a + df);
    let x0 = match w.decay() {
        Decay::Power(p) => {
            if p <= df {
                return Err(Error::Divergence(format!(
                    "Σ over harmonic shells of λ^{{-{p}}} diverges in d = {d} (needs p > d)"
                )));
            }
            if b + a * df <= 0.0 {
                return Err(Error::domain("power weights need positive harmonic levels"));
            }
            (((df - 1.0) * c - p) / (p - df + 1.0)).max(0.0)
        }
        Decay::Exponential(r) => {
            if !(r > 0.0) {
                return Err(Error::domain("exponential decay rate must be positive"));
            }
            ((df - 1.0) / (2.0 * a * r) - 1.0).max(0.0)
        }
        Decay::Vanishing => 0.0,
    };
    // Exponential weights are only certified for nonnegative arguments.
    let x_pos = if b + a * df < 0.0 { (-b / a - df) / 2.0 } else { 0.0 };
    let start = (x0.max(x_pos).ceil() as u64).max(next);
    let g = |x: f64| shell_multiplicity(x, d) * w.eval(level(x));
    let mut explicit = 0.0;
    for k in next..start {
        explicit += binomial(k + d as u64 - 1, d as u64 - 1) * w.eval(level(k as f64));
    }
    let tail = integrate_to_infinity(g, start as f64, cfg)?.value;
    Ok((explicit + tail, explicit + tail + g(start as f64)))
}

/// Box levels 1 + ε²Σn_j², enumerated until at least `cutoff` levels
/// (with multiplicity) are present.
pub fn box_spectrum(eps: f64, d: u32, cutoff: u64) -> Result<Spectrum> {
    box_spectrum_with_budget(eps, d, cutoff, DEFAULT_BUDGET)
}

pub fn box_spectrum_with_budget(eps: f64, d: u32, cutoff: u64, budget: u64) -> Result<Spectrum> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::domain(format!("eps must be positive, got {eps}")));
    }
    crate::constants::check_dim(d)?;
    if cutoff == 0 {
        return Err(Error::domain("cutoff must be at least 1"));
    }
    if d == 1 {
        if cutoff > budget {
            return Err(Error::Resource(format!("box spectrum cutoff {cutoff} exceeds the budget {budget}")));
        }
        let eigenvalues: Vec<f64> = (1..=cutoff).map(|n| 1.0 + eps * eps * (n * n) as f64).collect();
        return Ok(Spectrum {
            multiplicities: vec![1; eigenvalues.len()],
            eigenvalues,
            truncation: cutoff,
            tail: TailModel::Lattice { eps, d, radius_sq: cutoff * cutoff },
        });
    }
    let df = d as f64;
    // Orthant-ball volume estimate of the count below radius² m, padded by
    // the boundary layer.
    let volume = |m: f64| sphere_area(d) / df / 2f64.powi(d as i32) * m.powf(0.5 * df);
    let mut m = d as u64;
    while volume(m as f64) < cutoff as f64 + df * 2.0 * (m as f64).powf(0.5 * (df - 1.0)) {
        m *= 2;
        check_lattice_budget(eps, d, m, budget)?;
    }
    let s = box_spectrum_to_radius(eps, d, m, budget)?;
    if s.truncation < cutoff {
        return Err(Error::Resource("lattice enumeration fell short of the cutoff".into()));
    }
    Ok(s)
}

fn check_lattice_budget(eps: f64, d: u32, m: u64, budget: u64) -> Result<()> {
    let work = if d == 1 { (m as f64).sqrt() } else { d as f64 * (m as f64).powf(1.5) };
    if work > budget as f64 || (d > 1 && m > (1 << 27)) {
        return Err(Error::Resource(format!(
            "box spectrum with eps={eps}, d={d} up to |n|² = {m} exceeds the enumeration budget {budget}; use a larger eps"
        )));
    }
    Ok(())
}

/// Box levels for all n ∈ ℕ*^d with |n|² ≤ radius_sq.
pub fn box_spectrum_to_radius(eps: f64, d: u32, radius_sq: u64, budget: u64) -> Result<Spectrum> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::domain(format!("eps must be positive, got {eps}")));
    }
    crate::constants::check_dim(d)?;
    check_lattice_budget(eps, d, radius_sq, budget)?;
    if d == 1 {
        let n = (radius_sq as f64).sqrt().floor() as u64;
        let eigenvalues: Vec<f64> = (1..=n).map(|k| 1.0 + eps * eps * (k * k) as f64).collect();
        return Ok(Spectrum {
            multiplicities: vec![1; eigenvalues.len()],
            eigenvalues,
            truncation: n,
            tail: TailModel::Lattice { eps, d, radius_sq },
        });
    }
    let counts = lattice_counts(d, radius_sq);
    let mut eigenvalues = Vec::new();
    let mut multiplicities = Vec::new();
    let mut total = 0;
    for (s, &c) in counts.iter().enumerate() {
        if c > 0 {
            eigenvalues.push(1.0 + eps * eps * s as f64);
            multiplicities.push(c);
            total += c;
        }
    }
    Ok(Spectrum {
        eigenvalues,
        multiplicities,
        truncation: total,
        tail: TailModel::Lattice { eps, d, radius_sq },
    })
}

/// counts[s] = #{n ∈ ℕ*^d : |n|² = s} for s ≤ m.
fn lattice_counts(d: u32, m: u64) -> Vec<u64> {
    let len = m as usize + 1;
    let mut cur = vec![0u64; len];
    cur[0] = 1;
    for _ in 0..d {
        let mut next = vec![0u64; len];
        for (s, &c) in cur.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut n = 1usize;
            while s + n * n < len {
                next[s + n * n] += c;
                n += 1;
            }
        }
        cur = next;
    }
    cur
}

/// Harmonic levels B + A(2k+d) with multiplicity C(k+d−1, d−1).
pub fn harmonic_spectrum(a: f64, b: f64, d: u32, cutoff: u64) -> Result<Spectrum> {
    if !(a > 0.0 && a.is_finite()) || !b.is_finite() {
        return Err(Error::domain("harmonic spectrum needs A > 0 and finite B"));
    }
    crate::constants::check_dim(d)?;
    if cutoff == 0 {
        return Err(Error::domain("cutoff must be at least 1"));
    }
    let mut eigenvalues = Vec::new();
    let mut multiplicities = Vec::new();
    let mut total: u64 = 0;
    let mut k: u64 = 0;
    while total < cutoff {
        let mult = binomial(k + d as u64 - 1, d as u64 - 1);
        if mult > 1e15 || k > DEFAULT_BUDGET {
            return Err(Error::Resource("harmonic shell enumeration exceeds the budget".into()));
        }
        eigenvalues.push(b + a * (2 * k + d as u64) as f64);
        multiplicities.push(mult as u64);
        total += mult as u64;
        k += 1;
    }
    Ok(Spectrum {
        eigenvalues,
        multiplicities,
        truncation: total,
        tail: TailModel::Harmonic { a, b, d, next_shell: k },
    })
}

/// ln C(k+d−1, d−1) through ln Γ, for real k.
#[doc(hidden)]
pub fn ln_shell_multiplicity(k: f64, d: u32) -> Result<f64> {
    Ok(gamma_ln(k + d as f64)? - gamma_ln(d as f64)? - gamma_ln(k + 1.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    struct PowerW(f64);
    impl Weight for PowerW {
        fn eval(&self, s: f64) -> f64 {
            s.powf(-self.0)
        }
        fn decay(&self) -> Decay {
            Decay::Power(self.0)
        }
    }
    struct ExpW(f64);
    impl Weight for ExpW {
        fn eval(&self, s: f64) -> f64 {
            (-self.0 * s).exp()
        }
        fn decay(&self) -> Decay {
            Decay::Exponential(self.0)
        }
    }

    #[test]
    fn box_levels() {
        let s = box_spectrum(1.0, 1, 3).unwrap();
        assert_eq!(&s.eigenvalues[..3], &[2.0, 5.0, 10.0]);
        let s = box_spectrum(1.0, 2, 5).unwrap();
        assert_eq!((s.eigenvalues[0], s.multiplicities[0]), (3.0, 1));
        assert_eq!((s.eigenvalues[1], s.multiplicities[1]), (6.0, 2));
    }

    #[test]
    fn harmonic_levels() {
        let s = harmonic_spectrum(1.0, 0.0, 2, 6).unwrap();
        assert_eq!(s.eigenvalues, vec![2.0, 4.0, 6.0]);
        assert_eq!(s.multiplicities, vec![1, 2, 3]);
        let t = harmonic_spectrum(1.0, 0.7, 1, 4).unwrap();
        assert_eq!(t.eigenvalues, vec![1.7, 3.7, 5.7, 7.7]);
    }

    #[test]
    fn box_sum_brackets_known_value() {
        // Σ (1+n²)^{-2} = (π coth π)/4 + π²csch²π/4 − 1/2
        let pi = std::f64::consts::PI;
        let exact = pi / (4.0 * pi.tanh()) + pi * pi / (4.0 * pi.sinh().powi(2)) - 0.5;
        for cutoff in [5, 50, 500] {
            let s = box_spectrum(1.0, 1, cutoff).unwrap();
            let e = s.weighted_sum(&PowerW(2.0), 1e-12).unwrap();
            assert!(e.partial + e.remainder_lo <= exact + 1e-15);
            assert!(e.partial + e.remainder_hi >= exact - 1e-15);
            assert!((e.value - exact).abs() <= e.error_bound);
        }
    }

    #[test]
    fn box_sum_diverges_for_small_power() {
        let s = box_spectrum(1.0, 2, 10).unwrap();
        assert!(matches!(s.weighted_sum(&PowerW(1.0), 1e-9), Err(Error::Divergence(_))));
    }

    #[test]
    fn harmonic_heat_trace_tail() {
        for d in 1..=3u32 {
            let s = harmonic_spectrum(1.0, 0.0, d, 3).unwrap();
            let e = s.weighted_sum(&ExpW(1.0), 1e-12).unwrap();
            let exact = 1.0 / (2.0 * 1f64.sinh()).powi(d as i32);
            assert!((e.value - exact).abs() <= e.error_bound + 1e-15, "d={d}");
        }
    }

    #[test]
    fn discrete_tail_bound() {
        let s = Spectrum::from_levels(&[1.0, 2.0], TailModel::Discrete { remaining: 3, floor: 2.0 }).unwrap();
        let e = s.weighted_sum(&ExpW(1.0), 1e-9).unwrap();
        assert_eq!(e.remainder_hi, 3.0 * (-2f64).exp());
    }

    #[test]
    fn unknown_tail_is_truncation_error() {
        let s = Spectrum::from_levels(&[1.0, 2.0], TailModel::Unknown).unwrap();
        assert!(matches!(s.weighted_sum(&ExpW(1.0), 1e-9), Err(Error::Truncation(_))));
    }

    #[test]
    fn clustering() {
        let s = Spectrum::from_levels(&[1.0, 1.0 + 1e-12, 2.0], TailModel::Unknown).unwrap();
        assert_eq!(s.multiplicities, vec![2, 1]);
        assert_eq!(s.truncation, 3);
    }

    #[test]
    fn multiplicity_matches_gamma_form() {
        for d in 1..5 {
            for k in 0..6u64 {
                let exact = binomial(k + d as u64 - 1, d as u64 - 1);
                assert!((ln_shell_multiplicity(k as f64, d).unwrap().exp() - exact).abs() < 1e-9 * exact);
            }
        }
    }

    proptest! {
        #[test]
        fn box_scaling_in_eps(eps in 0.1f64..2.0, f in 0.3f64..3.0) {
            let a = box_spectrum(eps, 2, 30).unwrap();
            let b = box_spectrum(eps * f, 2, 30).unwrap();
            for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues).take(10) {
                prop_assert!(((y - 1.0) - (x - 1.0) * f * f).abs() <= 1e-12 * (1.0 + y));
            }
        }

        #[test]
        fn harmonic_shift(b in -5.0f64..5.0) {
            let s0 = harmonic_spectrum(1.0, 0.0, 1, 10).unwrap();
            let s1 = harmonic_spectrum(1.0, b, 1, 10).unwrap();
            for (x, y) in s0.eigenvalues.iter().zip(&s1.eigenvalues) {
                prop_assert!((y - x - b).abs() < 1e-12);
            }
        }
    }
}

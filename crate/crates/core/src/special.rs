//! Gamma function and a few related constants.

use crate::error::{Error, Result};

/// Apéry's constant ζ(3).
pub const ZETA_3: f64 = 1.202_056_903_159_594_2;

/// ln Γ(x) for x > 0.
///
/// Backed by the musl `lgamma` port in `libm`, which keeps relative accuracy
/// near the zeros of ln Γ at x = 1 and x = 2 where a plain Lanczos sum loses it.
pub fn gamma_ln(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("ln Γ(x) requires finite x > 0, got {x}")));
    }
    Ok(libm::lgamma(x))
}

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("Γ(x) requires finite x > 0, got {x}")));
    }
    Ok(libm::tgamma(x))
}

/// Surface area |S^{d-1}| = 2π^{d/2}/Γ(d/2) of the unit sphere in ℝ^d.
pub fn sphere_area(d: u32) -> f64 {
    let half = 0.5 * d as f64;
    2.0 * std::f64::consts::PI.powf(half) / libm::tgamma(half)
}

/// Binomial coefficient C(n, k) as a float.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Sum of the alternating series Σ_{k≥0} (-1)^k a_k for a completely
/// monotone sequence a_k, by the Cohen–Rodriguez Villegas–Zagier
/// acceleration. `terms` controls the accuracy, roughly 5.8^{-terms}.
pub fn alternating_sum(a: impl Fn(usize) -> f64, terms: usize) -> f64 {
    let n = terms as f64;
    let d = (3.0 + 8f64.sqrt()).powf(n);
    let d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..terms {
        let kf = k as f64;
        c = b - c;
        s += c * a(k);
        b *= (kf + n) * (kf - n) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

//! Adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The rule never samples the interval end points, so integrable end-point
//! singularities and the infinite-range maps below are safe.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Tolerances and budget for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-11,
            max_intervals: 4000,
        }
    }
}

impl QuadConfig {
    pub fn rel(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        k += WGK[j] * pair;
        if j % 2 == 1 {
            g += WG[j / 2] * pair;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Integrates `f` over the finite interval [a, b].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: QuadConfig) -> Result<Quad> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integration limits must be finite"));
    }
    if a == b {
        return Ok(Quad {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let (value, error) = kronrod(&f, a, b);
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    loop {
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::numeric("integrand produced a non-finite value", total_err));
        }
        let target = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if total_err <= target {
            break;
        }
        if heap.len() >= cfg.max_intervals {
            return Err(Error::numeric(
                format!("quadrature did not reach tolerance {target:e} within {} intervals", cfg.max_intervals),
                total_err,
            ));
        }
        let seg = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (seg.a + seg.b);
        if !(mid > seg.a && mid < seg.b) {
            return Err(Error::numeric("quadrature interval underflow", total_err));
        }
        let (v1, e1) = kronrod(&f, seg.a, mid);
        let (v2, e2) = kronrod(&f, mid, seg.b);
        evaluations += 30;
        total += v1 + v2 - seg.value;
        total_err += e1 + e2 - seg.error;
        heap.push(Segment { a: seg.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: seg.b, value: v2, error: e2 });
    }
    // Re-sum to shed the round-off accumulated by incremental updates.
    let (value, error) = heap
        .iter()
        .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
    Ok(Quad { value, error, evaluations })
}

/// Integrates over [a, ∞) via x = a + t/(1−t).
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, cfg: QuadConfig) -> Result<Quad> {
    integrate(
        |t| {
            let s = 1.0 - t;
            let fx = f(a + t / s);
            if fx == 0.0 { 0.0 } else { fx / (s * s) }
        },
        0.0,
        1.0,
        cfg,
    )
}

/// Integrates over the whole real line via x = tan θ.
pub fn integrate_line<F: Fn(f64) -> f64>(f: F, cfg: QuadConfig) -> Result<Quad> {
    let half = std::f64::consts::FRAC_PI_2;
    integrate(
        |th: f64| {
            let c = th.cos();
            let fx = f(th.tan());
            if fx == 0.0 { 0.0 } else { fx / (c * c) }
        },
        -half,
        half,
        cfg,
    )
}

/// Composite Simpson rule on uniformly spaced samples. An even number of
/// panels is assumed; a trailing odd panel falls back to the trapezoid rule.
pub fn simpson(samples: &[f64], h: f64) -> f64 {
    let n = samples.len();
    if n < 2 {
        return 0.0;
    }
    let panels = n - 1;
    let even = panels - panels % 2;
    let mut s = 0.0;
    let mut i = 0;
    while i < even {
        s += samples[i] + 4.0 * samples[i + 1] + samples[i + 2];
        i += 2;
    }
    s *= h / 3.0;
    if even < panels {
        s += 0.5 * h * (samples[n - 2] + samples[n - 1]);
    }
    s
}

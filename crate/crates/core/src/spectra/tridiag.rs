//! Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for
//! eigenvalues, inverse iteration for eigenvectors.

use crate::error::{Error, Result};

/// Levels closer than this (relative to 1 + |λ|) are treated as degenerate.
pub const CLUSTER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    /// off[i] couples rows i and i+1.
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::input("tridiagonal matrix needs n diagonal and n−1 off-diagonal entries"));
        }
        if let Some(i) = diag.iter().chain(&off).position(|v| !v.is_finite()) {
            return Err(Error::input(format!("non-finite matrix entry at position {i}")));
        }
        Ok(Self { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let denom = if q == 0.0 { f64::EPSILON * (1.0 + x.abs()) } else { q };
            q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / denom;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The k-th eigenvalue (0-based, ascending) by bisection.
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.len() {
            return Err(Error::input(format!("eigenvalue index {k} out of range for n = {}", self.len())));
        }
        let (lo, hi) = self.gershgorin();
        let pad = f64::EPSILON * (lo.abs() + hi.abs()) + f64::MIN_POSITIVE;
        self.bisect(k, lo - pad, hi + pad)
    }

    fn bisect(&self, k: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
        for _ in 0..256 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Ok(mid);
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let width = hi - lo;
        if width <= 4.0 * f64::EPSILON * (lo.abs() + hi.abs()) {
            Ok(0.5 * (lo + hi))
        } else {
            Err(Error::numeric(format!("bisection for eigenvalue {k} did not converge"), width))
        }
    }

    /// The `count` lowest eigenvalues in ascending order.
    pub fn lowest(&self, count: usize) -> Result<Vec<f64>> {
        if count > self.len() {
            return Err(Error::input(format!(
                "requested {count} eigenvalues from a {}×{} matrix",
                self.len(),
                self.len()
            )));
        }
        let (lo, hi) = self.gershgorin();
        let pad = f64::EPSILON * (lo.abs() + hi.abs()) + f64::MIN_POSITIVE;
        let mut out = Vec::with_capacity(count);
        let mut floor = lo - pad;
        for k in 0..count {
            let v = self.bisect(k, floor, hi + pad)?;
            out.push(v);
            floor = floor.max(v - 8.0 * f64::EPSILON * (1.0 + v.abs()));
        }
        Ok(out)
    }

    /// All eigenvalues below `cutoff`.
    pub fn below(&self, cutoff: f64) -> Result<Vec<f64>> {
        let m = self.sturm_count(cutoff);
        self.lowest(m)
    }

    /// (T − σ) x for a vector x.
    pub fn apply(&self, x: &[f64], sigma: f64) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut y = (self.diag[i] - sigma) * x[i];
                if i > 0 {
                    y += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.off[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// Unit eigenvectors for the given (ascending) eigenvalues, by inverse
    /// iteration with orthogonalization inside degenerate clusters.
    pub fn eigenvectors(&self, eigenvalues: &[f64]) -> Result<Vec<Vec<f64>>> {
        let n = self.len();
        let scale = {
            let (lo, hi) = self.gershgorin();
            lo.abs().max(hi.abs()).max(1.0)
        };
        let mut vecs: Vec<Vec<f64>> = Vec::with_capacity(eigenvalues.len());
        let mut cluster_start = 0;
        for (j, &lam) in eigenvalues.iter().enumerate() {
            // Close levels lose orthogonality under independent inverse
            // iteration, so they are orthogonalized as one block.
            if j > 0 && (lam - eigenvalues[j - 1]).abs() > 1e-3 * scale {
                cluster_start = j;
            }
            let lu = TridiagLu::factor(self, lam + 2.0 * f64::EPSILON * scale)?;
            // Deterministic start with components in every direction.
            let mut x: Vec<f64> = (0..n)
                .map(|i| 1.0 + 0.5 * ((i as f64 + 1.0) * (j as f64 + 1.7)).sin())
                .collect();
            let mut residual = f64::INFINITY;
            for _ in 0..8 {
                x = lu.solve(&x);
                for v in &vecs[cluster_start..j] {
                    let dot: f64 = v.iter().zip(&x).map(|(a, b)| a * b).sum();
                    x.iter_mut().zip(v).for_each(|(xi, vi)| *xi -= dot * vi);
                }
                let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                if !(norm > 0.0 && norm.is_finite()) {
                    return Err(Error::numeric("inverse iteration broke down", norm));
                }
                x.iter_mut().for_each(|v| *v /= norm);
                let r = self.apply(&x, lam);
                residual = r.iter().map(|v| v * v).sum::<f64>().sqrt();
                if residual <= 1e-13 * scale {
                    break;
                }
            }
            if residual > 1e-6 * scale {
                return Err(Error::numeric(format!("eigenvector {j} did not converge"), residual));
            }
            // Fix the sign so the first significant component is positive.
            let lead = x.iter().copied().find(|v| v.abs() > 1e-8).unwrap_or(1.0);
            if lead < 0.0 {
                x.iter_mut().for_each(|v| *v = -*v);
            }
            vecs.push(x);
        }
        Ok(vecs)
    }
}

/// LU factorization with partial pivoting of a shifted tridiagonal matrix.
struct TridiagLu {
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    dl: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn factor(t: &SymTridiag, sigma: f64) -> Result<Self> {
        let n = t.len();
        let mut d: Vec<f64> = t.diag.iter().map(|v| v - sigma).collect();
        let mut dl = t.off.clone();
        let mut du = t.off.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        let tiny = f64::EPSILON * t.gershgorin().1.abs().max(1.0);
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let f = dl[i] / d[i];
                dl[i] = f;
                d[i + 1] -= f * du[i];
            } else {
                let f = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = f;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - f * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -f * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        Ok(Self { d, du, du2, dl, swapped })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.d.len();
        let mut x = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let tmp = x[i];
                x[i] = x[i + 1];
                x[i + 1] = tmp - self.dl[i] * x[i];
            } else {
                x[i + 1] -= self.dl[i] * x[i];
            }
        }
        x[n - 1] /= self.d[n - 1];
        if n > 1 {
            x[n - 2] = (x[n - 2] - self.du[n - 2] * x[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - self.du[i] * x[i + 1] - self.du2[i] * x[i + 2]) / self.d[i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn laplacian(n: usize) -> SymTridiag {
        SymTridiag::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap()
    }

    #[test]
    fn laplacian_eigenvalues() {
        let n = 50;
        let t = laplacian(n);
        let ev = t.lowest(5).unwrap();
        for (k, v) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13, "{k}: {v} vs {exact}");
        }
    }

    #[test]
    fn eigenvectors_orthonormal_and_accurate() {
        let t = laplacian(40);
        let ev = t.lowest(6).unwrap();
        let vs = t.eigenvectors(&ev).unwrap();
        for i in 0..6 {
            let r = t.apply(&vs[i], ev[i]);
            assert!(r.iter().map(|v| v * v).sum::<f64>().sqrt() < 1e-10);
            for j in 0..6 {
                let dot: f64 = vs[i].iter().zip(&vs[j]).map(|(a, b)| a * b).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn degenerate_direct_sum() {
        // Two decoupled identical blocks: every level is doubly degenerate.
        let mut off = vec![-1.0; 9];
        off[4] = 0.0;
        let t = SymTridiag::new(vec![2.0; 10], off).unwrap();
        let ev = t.lowest(4).unwrap();
        assert!((ev[0] - ev[1]).abs() < 1e-12);
        let vs = t.eigenvectors(&ev).unwrap();
        let dot: f64 = vs[0].iter().zip(&vs[1]).map(|(a, b)| a * b).sum();
        assert!(dot.abs() < 1e-10);
    }

    proptest! {
        #[test]
        fn sturm_count_matches_bisection(diag in prop::collection::vec(-5.0f64..5.0, 3..30), seed in 0u64..1000) {
            let n = diag.len();
            let off: Vec<f64> = (0..n - 1).map(|i| ((i as u64 * 7 + seed) % 11) as f64 / 5.0 - 1.0).collect();
            let t = SymTridiag::new(diag, off).unwrap();
            let ev = t.lowest(n).unwrap();
            prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
            let trace: f64 = t.diag.iter().sum();
            prop_assert!((ev.iter().sum::<f64>() - trace).abs() < 1e-9 * (1.0 + trace.abs()) * n as f64);
        }
    }
}

//! Finite-difference Schrödinger operators on an interval or a half-line
//! (radial reduction), solved through the tridiagonal eigensolver.

use super::potential::{Asymptotics, Potential, PotentialKind};
use super::spectrum::{Spectrum, TailModel};
use super::tridiag::SymTridiag;
use crate::error::{Error, Result};

/// Knobs for the grid solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Explicit computational interval; chosen automatically when absent.
    pub domain: Option<(f64, f64)>,
    /// Confining potentials: enlarge the box until V(L) ≥ margin · λ_n.
    pub margin: f64,
    /// Angular momentum sector for radial problems.
    pub ell: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { domain: None, margin: 4.0, ell: 0 }
    }
}

/// A discretized operator −u″ + W u with its grid.
#[derive(Debug, Clone)]
pub struct Hamiltonian1d {
    pub nodes: Vec<f64>,
    pub h: f64,
    pub matrix: SymTridiag,
}

impl Hamiltonian1d {
    /// Central differences on the interior nodes of [a, b] with u(a) = u(b) = 0.
    pub fn dirichlet(v: impl Fn(f64) -> f64, a: f64, b: f64, n_grid: usize) -> Result<Self> {
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(Error::domain(format!("invalid interval [{a}, {b}]")));
        }
        if n_grid < 3 {
            return Err(Error::domain("need at least 3 grid points"));
        }
        let h = (b - a) / (n_grid + 1) as f64;
        let nodes: Vec<f64> = (1..=n_grid).map(|i| a + i as f64 * h).collect();
        let ih2 = 1.0 / (h * h);
        let diag: Vec<f64> = nodes.iter().map(|&x| 2.0 * ih2 + v(x)).collect();
        if let Some(i) = diag.iter().position(|d| !d.is_finite()) {
            return Err(Error::input(format!("potential is not finite at x = {}", nodes[i])));
        }
        let matrix = SymTridiag::new(diag, vec![-ih2; n_grid - 1])?;
        Ok(Self { nodes, h, matrix })
    }

    /// Reduced radial operator −u″ + [V(r) + c/r²] u on (0, R), u = r^{(d−1)/2}ψ,
    /// c = ℓ(ℓ+d−2) + (d−1)(d−3)/4.
    ///
    /// With c = 0 the node grid of [`Hamiltonian1d::dirichlet`] is used
    /// (u(0) = 0). Otherwise nodes sit at half-cells r = (i+½)h and the
    /// operator is discretized in flux form, −r^{1−d}(r^{d−1}ψ′)′, then
    /// symmetrized by u = r^{(d−1)/2}ψ; the flux through r = 0 vanishes.
    pub fn radial(v: impl Fn(f64) -> f64, d: u32, ell: u32, r_max: f64, n_grid: usize) -> Result<Self> {
        crate::constants::check_dim(d)?;
        if d == 1 && ell > 1 {
            return Err(Error::domain("in d = 1 only the even (0) and odd (1) sectors exist"));
        }
        if centrifugal(d, ell) == 0.0 {
            return Self::dirichlet(v, 0.0, r_max, n_grid);
        }
        if !(r_max > 0.0 && r_max.is_finite()) || n_grid < 3 {
            return Err(Error::domain("radial grid needs R > 0 and at least 3 points"));
        }
        let h = r_max / (n_grid as f64 + 0.5);
        let nodes: Vec<f64> = (0..n_grid).map(|i| (i as f64 + 0.5) * h).collect();
        let ih2 = 1.0 / (h * h);
        let p = d as i32 - 1;
        let angular = (ell * (ell + d - 2)) as f64;
        let face = |i: usize| (i as f64 * h).powi(p);
        let mut diag = Vec::with_capacity(n_grid);
        for (i, &r) in nodes.iter().enumerate() {
            let flux = (face(i) + face(i + 1)) / r.powi(p);
            diag.push(flux * ih2 + v(r) + angular / (r * r));
        }
        if let Some(i) = diag.iter().position(|d| !d.is_finite()) {
            return Err(Error::input(format!("potential is not finite at r = {}", nodes[i])));
        }
        let off: Vec<f64> = (0..n_grid - 1)
            .map(|i| -face(i + 1) * ih2 / (nodes[i] * nodes[i + 1]).powf(0.5 * p as f64))
            .collect();
        let matrix = SymTridiag::new(diag, off)?;
        Ok(Self { nodes, h, matrix })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn lowest(&self, n: usize) -> Result<Vec<f64>> {
        self.matrix.lowest(n)
    }

    /// Lowest eigenpairs with eigenfunctions normalized so h Σ ψ² = 1.
    pub fn eigenpairs(&self, n: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
        let vals = self.matrix.lowest(n)?;
        let mut vecs = self.matrix.eigenvectors(&vals)?;
        let s = 1.0 / self.h.sqrt();
        for v in &mut vecs {
            v.iter_mut().for_each(|x| *x *= s);
        }
        Ok((vals, vecs))
    }

    /// Discrete energy h·ψᵀHψ = h Σ|ψ_{i+1}−ψ_i|²/h² + h Σ V|ψ_i|².
    pub fn energy(&self, psi: &[f64]) -> f64 {
        let hp = self.matrix.apply(psi, 0.0);
        self.h * psi.iter().zip(&hp).map(|(a, b)| a * b).sum::<f64>()
    }

    /// h Σ a_i b_i.
    pub fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        self.h * a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>()
    }
}

pub fn centrifugal(d: u32, ell: u32) -> f64 {
    let (d, l) = (d as f64, ell as f64);
    l * (l + d - 2.0) + (d - 1.0) * (d - 3.0) / 4.0
}

fn check_counts(n_eigs: usize, n_grid: usize) -> Result<()> {
    if n_eigs == 0 {
        return Err(Error::domain("n_eigs must be at least 1"));
    }
    if n_grid < 8 * n_eigs {
        return Err(Error::domain(format!(
            "n_grid = {n_grid} is below 8·n_eigs = {}",
            8 * n_eigs
        )));
    }
    Ok(())
}

/// Builds the operator, choosing the interval when none is given.
/// `radial` selects [0, L] instead of [−L, L] for automatically sized boxes.
fn build(v: &Potential, n_eigs: usize, n_grid: usize, opts: &SolveOptions, radial: bool) -> Result<(Hamiltonian1d, Vec<f64>)> {
    let make = |a: f64, b: f64| -> Result<Hamiltonian1d> {
        if radial {
            Hamiltonian1d::radial(|r| v.value(r), v.d, opts.ell, b, n_grid)
        } else {
            Hamiltonian1d::dirichlet(|x| v.value(x), a, b, n_grid)
        }
    };
    // The cube's edge is excluded: V jumps to +∞ exactly there.
    let fixed = opts.domain.or_else(|| match v.kind {
        PotentialKind::Box { eps } if !radial => Some((0.0, std::f64::consts::PI / eps)),
        _ => v.bounded_domain().map(|(a, b)| if radial { (0.0, b) } else { (a, b) }),
    });
    if let Some((a, b)) = fixed {
        let value = |x: f64| if matches!(v.kind, PotentialKind::Box { .. }) { 1.0 } else { v.value(x) };
        let ham = if radial {
            Hamiltonian1d::radial(value, v.d, opts.ell, b, n_grid)?
        } else {
            Hamiltonian1d::dirichlet(value, a, b, n_grid)?
        };
        let ev = ham.lowest(n_eigs)?;
        return Ok((ham, ev));
    }
    match v.asymptotics() {
        Asymptotics::Limit(_) => {
            let scale = match v.kind {
                PotentialKind::Sech2 { a, .. } => 1.0 / a,
                _ => 1.0,
            };
            let l = 30.0 * scale.max(1.0);
            let ham = make(-l, l)?;
            let ev = ham.lowest(n_eigs)?;
            Ok((ham, ev))
        }
        Asymptotics::Confining => {
            // Start where V reaches 16 and grow until V(L) ≥ margin·λ_n.
            let mut l = 1.0;
            while v.value(l) < 16.0 + v.min_value().max(0.0) {
                l *= 1.25;
            }
            for _ in 0..60 {
                let ham = make(-l, l)?;
                let ev = ham.lowest(n_eigs)?;
                let top = *ev.last().expect("n_eigs ≥ 1");
                if top <= 0.0 || v.value(l) >= opts.margin * top {
                    return Ok((ham, ev));
                }
                l *= 1.25;
            }
            Err(Error::numeric("could not size the computational box", f64::NAN))
        }
        Asymptotics::Bounded => unreachable!("bounded potentials carry a domain"),
    }
}

/// Lowest `n_eigs` levels of −u″ + Vu in one dimension with Dirichlet ends.
pub fn dirichlet_solve(v: &Potential, n_eigs: usize, n_grid: usize) -> Result<Spectrum> {
    dirichlet_solve_with(v, n_eigs, n_grid, &SolveOptions::default())
}

pub fn dirichlet_solve_with(v: &Potential, n_eigs: usize, n_grid: usize, opts: &SolveOptions) -> Result<Spectrum> {
    if v.d != 1 {
        return Err(Error::domain("dirichlet_solve is one-dimensional; use radial_solve for d ≥ 2"));
    }
    check_counts(n_eigs, n_grid)?;
    let (_, ev) = build(v, n_eigs, n_grid, opts, false)?;
    discrete_spectrum(&ev, n_grid)
}

/// Dirichlet Hamiltonian together with its lowest eigenpairs.
pub fn dirichlet_eigenpairs(v: &Potential, n_eigs: usize, n_grid: usize, opts: &SolveOptions) -> Result<(Hamiltonian1d, Vec<f64>, Vec<Vec<f64>>)> {
    if v.d != 1 {
        return Err(Error::domain("dirichlet_eigenpairs is one-dimensional"));
    }
    check_counts(n_eigs, n_grid)?;
    let (ham, _) = build(v, n_eigs, n_grid, opts, false)?;
    let (vals, vecs) = ham.eigenpairs(n_eigs)?;
    Ok((ham, vals, vecs))
}

/// Lowest levels of the radial problem in sector `opts.ell`.
pub fn radial_solve(v: &Potential, n_eigs: usize, n_grid: usize) -> Result<Spectrum> {
    radial_solve_with(v, n_eigs, n_grid, &SolveOptions::default())
}

pub fn radial_solve_with(v: &Potential, n_eigs: usize, n_grid: usize, opts: &SolveOptions) -> Result<Spectrum> {
    if matches!(v.kind, PotentialKind::Box { .. }) && v.d > 1 {
        return Err(Error::domain("the box potential is not radial"));
    }
    check_counts(n_eigs, n_grid)?;
    let (_, ev) = build(v, n_eigs, n_grid, opts, true)?;
    discrete_spectrum(&ev, n_grid)
}

fn discrete_spectrum(ev: &[f64], n_grid: usize) -> Result<Spectrum> {
    let floor = *ev.last().expect("n_eigs ≥ 1");
    Spectrum::from_levels(
        ev,
        TailModel::Discrete {
            remaining: (n_grid - ev.len()) as u64,
            floor,
        },
    )
}

//! Potentials, spectra, finite-difference solvers and heat traces.

pub mod heat;
pub mod potential;
pub mod solver;
pub mod spectrum;
pub mod tridiag;

pub use heat::{discrete_gt_study, gt_rhs, harmonic_heat_trace, heat_trace, lattice_kernel_constant, GtRow, GtStudy, HeatWeight};
pub use potential::{parse_potential_spec, parse_samples_json, parse_two_column, Potential, PotentialKind, PotentialSpec, Sampled};
pub use solver::{dirichlet_eigenpairs, dirichlet_solve, dirichlet_solve_with, radial_solve, radial_solve_with, Hamiltonian1d, SolveOptions};
pub use spectrum::{box_spectrum, box_spectrum_to_radius, harmonic_spectrum, Decay, Spectrum, SumEstimate, TailModel, Weight};
pub use tridiag::SymTridiag;

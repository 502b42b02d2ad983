//! Numerical toolkit for Schrödinger spectra, Lieb–Thirring-type trace
//! inequalities, Gagliardo–Nirenberg optimizers and occupation-number free
//! energies.

pub mod constants;
pub mod error;
pub mod groundstate;
pub mod interpolation;
pub mod mixedstate;
pub mod parallel;
pub mod quadrature;
pub mod riesz;
pub mod spectra;
pub mod special;

pub use error::{Error, Result};

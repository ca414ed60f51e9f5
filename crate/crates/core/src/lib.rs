//! Numerical toolkit for non-local Schrödinger operators `H = Ψ(-Δ/2) + V`.
//!
//! The crate has three layers:
//!
//! - scalar building blocks: special functions ([`specfun`]), adaptive
//!   quadrature ([`quad`]), kinetic Fourier symbols ([`symbols`]) and radial
//!   potential families ([`potentials`]);
//! - spectral criteria: pointwise virial / Mourre checks and closed-form
//!   coupling thresholds ([`criteria`]), plus the weighted resolvent kernel
//!   of the massive relativistic operator ([`resolvent`]);
//! - grid validation: periodic-torus discretization of `H` by exact Fourier
//!   multipliers, dense and Lanczos eigensolvers, zero-mode residuals and
//!   coupling sweeps ([`grid`]).
//!
//! Everything is pure and deterministic: no global state, no RNG outside of
//! test oracles, so identical inputs reproduce identical reports.

pub mod criteria;
pub mod grid;
pub mod pchip;
pub mod potentials;
pub mod quad;
pub mod resolvent;
pub mod specfun;
pub mod symbols;

pub use criteria::{CriterionVerdict, RadialGrid, Status, ThresholdReport};
pub use grid::{GridHamiltonian, SpectralReport, SweepTable, TorusGrid};
pub use potentials::{Potential, ZeroMode};
pub use resolvent::ResolventParams;
pub use symbols::KineticSymbol;

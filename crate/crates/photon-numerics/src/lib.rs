//! Numerical toolkit for single-photon wave functions.
//!
//! The crate represents one-photon states by their scalar helicity
//! amplitudes `c_σ(k)` on a momentum-space grid, together with a form
//! exponent `α ∈ {-1/2, 0, +1/2}` that selects between the vector-potential,
//! Landau-Peierls and electric-field weightings `ω_k^α`. Everything else —
//! polarization triads, the five equivalent scalar-product forms, Lorentz
//! boosts of the 4-vector embedding, the position operator, and real-space
//! number amplitudes — is derived from that canonical representation.
//!
//! Units are natural throughout: `ħ = c = ε₀ = 1`, so `ω_k = |k|`.
//!
//! The `photon-numerics` binary exposes the verification suites as CLI
//! subcommands (`check-forms`, `boost-check`, `number-density`, `tail-fit`);
//! see the crate README for the config format.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod fftkit;
pub mod grid;
pub mod linalg;
pub mod localization;
pub mod lorentz;
pub mod polarization;
pub mod scalarprod;
pub mod sum;
pub mod wavefunction;

pub use error::{Error, Result};
pub use grid::{build_cartesian_grid, build_spherical_grid, CartesianGrid, Grid, KGrid, RadialRule};
pub use polarization::{ChiSpec, Helicity, PolarizationTriad};
pub use wavefunction::{FormExponent, WaveFunctionK, WaveFunctionR};

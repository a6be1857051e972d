//! Position-dependent-mass (PDM) Schrödinger models generated from
//! constant-mass problems by holomorphic point transformations.
//!
//! A map `f(z)` with `z = x₁ + i x₂` induces new coordinates
//! `y₁ = 2 Re f`, `y₂ = −2 Im f`, a mass `M = 1/(4|f′|²)` and an effective
//! potential. Eigenstates of the base problem carry over with unchanged
//! energies. The [`verify`] module checks all of this numerically on grids.
//!
//! Module map:
//! - [`complexcore`]: second-order complex jets used as a derivative oracle
//! - [`maps`]: the catalog of map families with analytic inverses and domains
//! - [`basemodels`]: oscillator and separable base problems, 1D eigensolver
//! - [`pdmbuild`]: mass, weight, effective potential and transformed states
//! - [`verify`]: flux-form discretization and verification checks

pub mod basemodels;
pub mod complexcore;
mod error;
pub mod exec;
pub mod maps;
pub mod pdmbuild;
pub mod verify;

pub use error::{Error, Point, Result};
pub use exec::Execution;

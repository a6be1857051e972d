//! Numerical verification on uniform lattices.
//!
//! [`Grid2D`] holds the lattice and its mask, [`PdmOperator`] the flux-form
//! discretization of `−∇·(M⁻¹∇) + U`, and [`checks`] the individual
//! measurements. [`VerificationReport`] collects them with tolerances.

pub mod checks;
mod grid;
mod operator;
mod quadrature;
mod report;

pub use grid::{default_mask_eps, Field2D, Grid2D, Region, MIN_INTERIOR, MIN_NODES};
pub use operator::{Coefficients, FnCoefficients, PdmOperator, Stencil, UncorrectedPotential};
pub use quadrature::gauss_legendre;
pub use report::{CheckEntry, VerificationReport};

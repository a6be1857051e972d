//! PDM models: a map family bound to a base potential.
//!
//! With `w = f(z)` and `M = 1/(4|f′|²)`, the operator `−∂ᵢ(1/M)∂ᵢ + U` on the
//! y-plane has the eigenfunctions `Ψ̃ = M^{1/2} Ψ(x(y))` with the base energies
//! when `U = V(x(y)) − |f″|²/|f′|²`. The bare conformal term
//! `|f″|²/(4|f′|⁴) = Δ_y g / g` (with `g = M^{-1/2}`) is exposed separately as
//! [`PdmModel::conformal_correction`]; it is the quantity the per-family closed
//! forms in [`closed_form`] describe.

pub mod closed_form;
mod state;

use serde::Serialize;

pub use state::TransformedState;

use crate::basemodels::BasePotential;
use crate::complexcore::Complex;
use crate::error::{Error, Point, Result};
use crate::maps::{DomainSpec, MapFamily, MapJet};

pub const DEFAULT_EXCLUSION_RADIUS: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PdmModel {
    family: MapFamily,
    base: BasePotential,
    domain: DomainSpec,
    exclusion_radius: f64,
}

/// Everything needed at one y point.
#[derive(Debug, Clone, Copy)]
pub struct Local {
    pub x: Point,
    pub jet: MapJet,
}

impl Local {
    pub fn inv_mass(&self) -> f64 {
        4.0 * self.jet.fp.norm_sqr()
    }

    pub fn mass(&self) -> f64 {
        1.0 / self.inv_mass()
    }

    /// `|f″|² / |f′|²`
    pub fn curvature_ratio(&self) -> f64 {
        self.jet.fpp.norm_sqr() / self.jet.fp.norm_sqr()
    }
}

impl PdmModel {
    pub fn new(family: MapFamily, base: BasePotential) -> Result<Self> {
        family.validate()?;
        base.validate()?;
        let domain = family.domain();
        Ok(PdmModel { family, base, domain, exclusion_radius: DEFAULT_EXCLUSION_RADIUS })
    }

    /// Radius of the ball around singular points inside which evaluation is refused.
    pub fn with_exclusion_radius(mut self, r: f64) -> Self {
        self.exclusion_radius = r;
        self
    }

    pub fn family(&self) -> &MapFamily {
        &self.family
    }

    pub fn base(&self) -> &BasePotential {
        &self.base
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn exclusion_radius(&self) -> f64 {
        self.exclusion_radius
    }

    pub fn local(&self, y: Point) -> Result<Local> {
        if self.domain.distance_to_excluded(y, false) < self.exclusion_radius {
            return Err(Error::Singularity { at: y, detail: "inside the exclusion ball of a singular point".into() });
        }
        let x = self.family.x_of_y(y)?;
        let jet = self.family.jet(Complex::new(x[0], x[1])).map_err(|e| at_y(e, y))?;
        if jet.fp.norm() == 0.0 {
            return Err(Error::Singularity { at: y, detail: "f' vanishes".into() });
        }
        let local = Local { x, jet };
        if local.inv_mass().is_finite() && local.curvature_ratio().is_finite() && local.mass().is_finite() {
            Ok(local)
        } else {
            Err(Error::NonFinite { at: y })
        }
    }

    pub fn mass(&self, y: Point) -> Result<f64> {
        self.local(y).map(|l| l.mass())
    }

    pub fn inv_mass(&self, y: Point) -> Result<f64> {
        self.local(y).map(|l| l.inv_mass())
    }

    /// `g = M^{-1/2}`.
    pub fn weight(&self, y: Point) -> Result<f64> {
        self.local(y).map(|l| l.inv_mass().sqrt())
    }

    /// `f″f*″ / (4 (f′f*′)²)`, equal to `Δ_y g / g`.
    pub fn conformal_correction(&self, y: Point) -> Result<f64> {
        self.local(y).map(|l| l.jet.fpp.norm_sqr() / (4.0 * l.jet.fp.norm_sqr().powi(2)))
    }

    /// `U − V = −|f″|²/|f′|²`.
    pub fn potential_shift(&self, y: Point) -> Result<f64> {
        self.local(y).map(|l| -l.curvature_ratio())
    }

    /// Effective potential `U(y)`.
    pub fn potential(&self, y: Point) -> Result<f64> {
        let l = self.local(y)?;
        let v = self.base.eval(l.x).map_err(|e| at_y(e, y))?;
        Ok(v - l.curvature_ratio())
    }

    /// `V − f″f*″/(4(f′f*′)²)`: the effective potential without the `1/M` factor on the conformal term.
    pub fn potential_uncorrected(&self, y: Point) -> Result<f64> {
        let l = self.local(y)?;
        let v = self.base.eval(l.x).map_err(|e| at_y(e, y))?;
        Ok(v - l.jet.fpp.norm_sqr() / (4.0 * l.jet.fp.norm_sqr().powi(2)))
    }

    pub fn base_potential_at(&self, y: Point) -> Result<f64> {
        let x = self.family.x_of_y(y)?;
        self.base.eval(x).map_err(|e| at_y(e, y))
    }

    pub fn describe(&self) -> String {
        format!("{} | {}", self.family.expression(), self.base.describe())
    }
}

fn at_y(e: Error, y: Point) -> Error {
    match e {
        Error::Domain { detail, .. } => Error::Domain { at: y, detail },
        Error::Singularity { detail, .. } => Error::Singularity { at: y, detail },
        Error::NonFinite { .. } => Error::NonFinite { at: y },
        other => other,
    }
}

pub(crate) fn w_polar(y: Point) -> (f64, f64) {
    (y[0].hypot(y[1]), y[1].atan2(y[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basemodels::BasePotential;
    use crate::complexcore::oracle_derivs;
    use proptest::prelude::*;

    fn osc() -> BasePotential {
        BasePotential::AnisotropicOscillator { omega1: 1.0, omega2: 2f64.sqrt() }
    }

    fn model(f: MapFamily) -> PdmModel {
        PdmModel::new(f, osc()).unwrap()
    }

    #[test]
    fn mass_examples() {
        assert!((model(MapFamily::Log { alpha: 1.0, gamma: 1.0, delta: 0.0 }).mass([0.0, 0.0]).unwrap() - 1.0).abs() < 1e-15);
        assert!((model(MapFamily::Inverse { b: 1.0 }).mass([1.0, 0.0]).unwrap() - 4.0).abs() < 1e-14);
        assert!((model(MapFamily::Quadratic { a: 0.125 }).mass([1.0, 0.0]).unwrap() - 1.0).abs() < 1e-14);
        assert!((model(MapFamily::Quadratic { a: 0.125 }).mass([-0.6, 0.8]).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn weight_examples() {
        let m = model(MapFamily::Log { alpha: 1.0, gamma: 1.0, delta: 0.0 });
        assert!((m.weight([2.0, 0.0]).unwrap() - (-1f64).exp()).abs() < 1e-15);
        assert!((m.weight([0.0, 1.0]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn conformal_term_examples() {
        let m = model(MapFamily::Log { alpha: 1.0, gamma: 1.0, delta: 0.0 });
        for y in [[0.0, 0.0], [1.5, -2.0], [-3.0, 4.0]] {
            assert!((m.conformal_correction(y).unwrap() - 0.25).abs() < 1e-14);
            let mass = m.mass(y).unwrap();
            assert!((m.potential_shift(y).unwrap() + 0.25 / mass).abs() < 1e-13 * (1.0 + 0.25 / mass));
        }
        let inv = model(MapFamily::Inverse { b: 1.0 });
        assert!((inv.conformal_correction([2.0, 0.0]).unwrap() - 1.0).abs() < 1e-14);
        assert!((inv.potential_shift([2.0, 0.0]).unwrap() + 4.0).abs() < 1e-13);
    }

    #[test]
    fn excluded_points_refuse_evaluation() {
        let m = model(MapFamily::Inverse { b: 1.0 });
        assert!(matches!(m.mass([0.0, 0.0]), Err(Error::Singularity { .. })));
        assert!(matches!(m.mass([5e-4, 0.0]), Err(Error::Singularity { .. })));
        assert!(m.mass([2e-3, 0.0]).is_ok());
        let tight = m.clone().with_exclusion_radius(1e-6);
        assert!(tight.mass([5e-4, 0.0]).is_ok());
    }

    #[test]
    fn out_of_strip_is_a_domain_error() {
        let m = model(MapFamily::Log { alpha: 1.0, gamma: 1.0, delta: 0.0 });
        assert!(matches!(m.potential([0.0, 20.0]), Err(Error::Domain { .. })));
    }

    fn family_and_y() -> impl Strategy<Value = (MapFamily, Point)> {
        (0usize..7, -1.5..1.5f64, -1.5..1.5f64).prop_filter_map("inside", |(k, s, t)| {
            let fam = match k {
                0 => MapFamily::Log { alpha: 0.9, gamma: 1.3, delta: 0.4 },
                1 => MapFamily::Asinh { a: 0.8, lambda: 1.1 },
                2 => MapFamily::Power { lambda: 0.5, beta: 1.2, alpha_shift: 0.0 },
                3 => MapFamily::ExpRadial { gamma: 1.0, beta: 0.7 },
                4 => MapFamily::Inverse { b: 1.5 },
                5 => MapFamily::Quadratic { a: 0.3 },
                _ => MapFamily::Logistic { a: 0.9, b: 0.7, lambda: 1.2 },
            };
            let y = [s, t];
            if fam.domain().distance_to_excluded(y, true) > 0.05 && fam.x_of_y(y).is_ok() {
                Some((fam, y))
            } else {
                None
            }
        })
    }

    proptest! {
        #[test]
        fn weight_squared_times_mass_is_one((fam, y) in family_and_y()) {
            let m = model(fam);
            let g = m.weight(y).unwrap();
            let mass = m.mass(y).unwrap();
            prop_assert!((g * g * mass - 1.0).abs() < 1e-14);
            prop_assert!(mass > 0.0);
        }

        #[test]
        fn potential_matches_jet_oracle((fam, y) in family_and_y()) {
            let m = model(fam);
            let x = fam.x_of_y(y).unwrap();
            let (_, fp, fpp) = oracle_derivs(&fam, Complex::new(x[0], x[1])).unwrap();
            let v = m.base().eval(x).unwrap();
            let oracle = v - fpp.norm_sqr() / fp.norm_sqr();
            let got = m.potential(y).unwrap();
            prop_assert!((got - oracle).abs() <= 1e-12 * oracle.abs().max(1.0), "{} vs {}", got, oracle);
        }
    }
}

//! Per-family closed forms in y-coordinates, used as cross-checks of the generic formulas.
//!
//! `ρ, φ` are polar coordinates of `(y₁, y₂)`. The shift closed forms describe
//! the conformal term `−f″f*″/(4(f′f*′)²)`; the effective potential of the
//! model divides this by `M`.

use crate::complexcore::Complex;
use crate::error::{Error, Point, Result};
use crate::maps::MapFamily;

use super::w_polar;

fn check(family: &MapFamily, y: Point) -> Result<()> {
    family.validate()?;
    for p in family.domain().singular_points() {
        if p == y {
            return Err(Error::Singularity { at: y, detail: "closed form evaluated at a singular point".into() });
        }
    }
    if !family.domain().in_region(y) {
        return Err(Error::Domain { at: y, detail: "outside the family's region".into() });
    }
    Ok(())
}

fn finite(v: f64, y: Point) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { at: y })
    }
}

pub fn mass_closed_form(family: &MapFamily, y: Point) -> Result<f64> {
    check(family, y)?;
    let (rho, phi) = w_polar(y);
    let v = match *family {
        MapFamily::Log { alpha, gamma, .. } => gamma * gamma * (alpha * y[0]).exp(),
        MapFamily::Asinh { a, lambda } => 0.5 * a * a * ((lambda * y[0]).cosh() + (lambda * y[1]).cos()),
        MapFamily::Power { lambda, beta, .. } => beta * beta / 4f64.powf(lambda + 1.0) * (rho * rho).powf(lambda),
        MapFamily::ExpRadial { beta, .. } => beta * beta / (rho * rho),
        MapFamily::Inverse { b } => 4.0 * b * b / rho.powi(4),
        MapFamily::Quadratic { a } => 1.0 / (8.0 * a.abs() * rho),
        MapFamily::Logistic { b, lambda, .. } => {
            4.0 / (lambda * lambda * rho * rho * (b * b * rho * rho - 4.0 * b * rho * phi.cos() + 4.0))
        }
    };
    finite(v, y)
}

/// Closed form of `−f″f*″/(4(f′f*′)²)`.
pub fn potential_shift_closed_form(family: &MapFamily, y: Point) -> Result<f64> {
    check(family, y)?;
    let (rho, phi) = w_polar(y);
    let v = match *family {
        MapFamily::Log { alpha, .. } => -alpha * alpha / 4.0,
        MapFamily::Asinh { lambda, .. } => {
            let (ch, cs) = ((lambda * y[0]).cosh(), (lambda * y[1]).cos());
            -lambda * lambda * (ch - cs) / (4.0 * (ch + cs))
        }
        MapFamily::Power { lambda, .. } => -lambda * lambda / (rho * rho),
        MapFamily::ExpRadial { .. } => -1.0 / (rho * rho),
        MapFamily::Inverse { .. } => -4.0 / (rho * rho),
        MapFamily::Quadratic { .. } => -1.0 / (4.0 * rho * rho),
        MapFamily::Logistic { b, .. } => {
            let c = phi.cos();
            -4.0 * (b * b * rho * rho - 2.0 * b * rho * c + 1.0)
                / (rho * rho * (b * b * rho * rho - 4.0 * b * rho * c + 4.0))
        }
    };
    finite(v, y)
}

/// `V(x(y))` for the anisotropic oscillator written directly in y-coordinates, where available.
pub fn oscillator_potential_closed_form(family: &MapFamily, omega1: f64, omega2: f64, y: Point) -> Option<f64> {
    let (rho, phi) = w_polar(y);
    let (s, d) = (omega1 * omega1 + omega2 * omega2, omega1 * omega1 - omega2 * omega2);
    match *family {
        MapFamily::Log { alpha, gamma, delta: 0.0 } => {
            Some(2.0 * gamma * gamma * (alpha * y[0]).exp() / (alpha * alpha) * (d * (alpha * y[1]).cos() + s))
        }
        MapFamily::Asinh { a, lambda } => {
            let (h1, h2) = (lambda * y[0] / 2.0, lambda * y[1] / 2.0);
            Some(
                4.0 * a * a / (lambda * lambda)
                    * (omega1 * omega1 * (h1.sinh() * h2.cos()).powi(2)
                        + omega2 * omega2 * (h1.cosh() * h2.sin()).powi(2)),
            )
        }
        MapFamily::Inverse { b } => Some(2.0 * b * b / (rho * rho) * (d * (2.0 * phi).cos() + s)),
        MapFamily::Quadratic { a } => Some(rho / (4.0 * a) * (d * phi.cos() + s)),
        _ => None,
    }
}

/// Alternative closed forms that disagree with the generic formulas, with the predicted ratio.
pub mod variants {
    use super::*;

    /// `(2A²/λ²)(cosh λy₁ + cos λy₂)`: ratio to the generic mass is `4/λ²`.
    pub fn asinh_mass(a: f64, lambda: f64, y: Point) -> f64 {
        2.0 * a * a / (lambda * lambda) * ((lambda * y[0]).cosh() + (lambda * y[1]).cos())
    }

    pub fn asinh_mass_ratio(lambda: f64) -> f64 {
        4.0 / (lambda * lambda)
    }

    /// `−1/(4a²ρ²)`: ratio to the generic conformal term is `1/a²`.
    pub fn quadratic_shift(a: f64, y: Point) -> f64 {
        let rho2 = y[0] * y[0] + y[1] * y[1];
        -1.0 / (4.0 * a * a * rho2)
    }

    pub fn quadratic_shift_ratio(a: f64) -> f64 {
        1.0 / (a * a)
    }

    /// `−λ²(1 − 2b(f + f*) + 4b²ff*)/(4ff*)`: ratio to the generic conformal term is `λ²|1 − bf|²`.
    pub fn logistic_shift_f_form(b: f64, lambda: f64, f: Complex) -> f64 {
        let ff = f.norm_sqr();
        -lambda * lambda * (1.0 - 2.0 * b * 2.0 * f.re + 4.0 * b * b * ff) / (4.0 * ff)
    }

    pub fn logistic_shift_f_form_ratio(b: f64, lambda: f64, f: Complex) -> f64 {
        lambda * lambda * (Complex::new(1.0, 0.0) - f * b).norm_sqr()
    }
}

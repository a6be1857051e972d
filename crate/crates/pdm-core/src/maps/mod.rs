//! Catalog of holomorphic map families.
//!
//! Coordinates follow `y₁ = 2 Re f(z)`, `y₂ = −2 Im f(z)` with `z = x₁ + i x₂`,
//! so `f(z) = w := (y₁ − i y₂)/2` and every inverse is `z = f⁻¹(w)`.
//! All branches are principal unless a family says otherwise.

mod domain;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use domain::{DomainSpec, ExclusionKind, Excluded, Geometry, RegionKind};

use crate::complexcore::{c, is_finite, on_log_cut, pt, Complex};
use crate::error::{Error, Point, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapFamily {
    /// `f = ln(αz/(2γ) + δ)/α`
    Log { alpha: f64, gamma: f64, delta: f64 },
    /// `f = asinh(λz/(2A))/λ`
    Asinh { a: f64, lambda: f64 },
    /// `f = ((λ+1)(z/β + α))^{1/(λ+1)}`
    Power { lambda: f64, beta: f64, alpha_shift: f64 },
    /// `f = γ exp(z/β)`
    ExpRadial { gamma: f64, beta: f64 },
    /// `f = b/z`
    Inverse { b: f64 },
    /// `f = a z²`
    Quadratic { a: f64 },
    /// `f = 1/(a exp(−λz) + b)`
    Logistic { a: f64, b: f64, lambda: f64 },
}

/// `f`, `f′`, `f″` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapJet {
    pub f: Complex,
    pub fp: Complex,
    pub fpp: Complex,
}

pub const CATALOG: [&str; 7] = ["log", "asinh", "power", "exp_radial", "inverse", "quadratic", "logistic"];

fn nonzero(name: &'static str, v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::param(name, "must be finite"));
    }
    if v == 0.0 {
        return Err(Error::param(name, "must be nonzero"));
    }
    Ok(())
}

fn finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, "must be finite"))
    }
}

fn is_integer(v: f64) -> bool {
    v.fract() == 0.0 && v.abs() < 64.0
}

fn w_of(y: Point) -> Complex {
    c(0.5 * y[0], -0.5 * y[1])
}

fn finite_point(z: Complex, at: Point) -> Result<Point> {
    if is_finite(z) {
        Ok(pt(z))
    } else {
        Err(Error::NonFinite { at })
    }
}

impl MapFamily {
    pub fn log(alpha: f64, gamma: f64, delta: f64) -> Result<Self> {
        let m = MapFamily::Log { alpha, gamma, delta };
        m.validate().map(|_| m)
    }

    pub fn asinh(a: f64, lambda: f64) -> Result<Self> {
        let m = MapFamily::Asinh { a, lambda };
        m.validate().map(|_| m)
    }

    pub fn power(lambda: f64, beta: f64, alpha_shift: f64) -> Result<Self> {
        let m = MapFamily::Power { lambda, beta, alpha_shift };
        m.validate().map(|_| m)
    }

    pub fn exp_radial(gamma: f64, beta: f64) -> Result<Self> {
        let m = MapFamily::ExpRadial { gamma, beta };
        m.validate().map(|_| m)
    }

    pub fn inverse(b: f64) -> Result<Self> {
        let m = MapFamily::Inverse { b };
        m.validate().map(|_| m)
    }

    pub fn quadratic(a: f64) -> Result<Self> {
        let m = MapFamily::Quadratic { a };
        m.validate().map(|_| m)
    }

    pub fn logistic(a: f64, b: f64, lambda: f64) -> Result<Self> {
        let m = MapFamily::Logistic { a, b, lambda };
        m.validate().map(|_| m)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            MapFamily::Log { alpha, gamma, delta } => {
                nonzero("alpha", alpha)?;
                nonzero("gamma", gamma)?;
                finite("delta", delta)
            }
            MapFamily::Asinh { a, lambda } => {
                nonzero("a", a)?;
                nonzero("lambda", lambda)
            }
            MapFamily::Power { lambda, beta, alpha_shift } => {
                finite("lambda", lambda)?;
                if lambda == -1.0 {
                    return Err(Error::param(
                        "lambda",
                        "lambda = -1 is the exponential branch; use the exp_radial family",
                    ));
                }
                nonzero("beta", beta)?;
                finite("alpha_shift", alpha_shift)
            }
            MapFamily::ExpRadial { gamma, beta } => {
                nonzero("gamma", gamma)?;
                nonzero("beta", beta)
            }
            MapFamily::Inverse { b } => nonzero("b", b),
            MapFamily::Quadratic { a } => nonzero("a", a),
            MapFamily::Logistic { a, b, lambda } => {
                nonzero("a", a)?;
                finite("b", b)?;
                finite("lambda", lambda)?;
                if lambda > 0.0 {
                    Ok(())
                } else {
                    Err(Error::param("lambda", "must be positive"))
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MapFamily::Log { .. } => "log",
            MapFamily::Asinh { .. } => "asinh",
            MapFamily::Power { .. } => "power",
            MapFamily::ExpRadial { .. } => "exp_radial",
            MapFamily::Inverse { .. } => "inverse",
            MapFamily::Quadratic { .. } => "quadratic",
            MapFamily::Logistic { .. } => "logistic",
        }
    }

    pub fn expression(&self) -> String {
        match *self {
            MapFamily::Log { alpha, gamma, delta } => {
                format!("f(z) = ln({alpha}*z/(2*{gamma}) + {delta}) / {alpha}")
            }
            MapFamily::Asinh { a, lambda } => format!("f(z) = asinh({lambda}*z/(2*{a})) / {lambda}"),
            MapFamily::Power { lambda, beta, alpha_shift } => {
                let q = lambda + 1.0;
                format!("f(z) = ({q}*(z/{beta} + {alpha_shift}))^(1/{q})")
            }
            MapFamily::ExpRadial { gamma, beta } => format!("f(z) = {gamma}*exp(z/{beta})"),
            MapFamily::Inverse { b } => format!("f(z) = {b}/z"),
            MapFamily::Quadratic { a } => format!("f(z) = {a}*z^2"),
            MapFamily::Logistic { a, b, lambda } => format!("f(z) = 1/({a}*exp(-{lambda}*z) + {b})"),
        }
    }

    /// Number of z-sheets covering one y point: the multiplicity of `z ↦ f(z)` on the base domain.
    pub fn sheet_count(&self) -> u32 {
        match *self {
            MapFamily::Quadratic { .. } => 2,
            MapFamily::Power { lambda, .. } => {
                let p = 1.0 / (lambda + 1.0);
                if is_integer(p) {
                    p.abs() as u32
                } else {
                    1
                }
            }
            _ => 1,
        }
    }

    pub fn f(&self, z: Complex) -> Result<Complex> {
        self.jet(z).map(|j| j.f)
    }

    /// Hand-derived `(f′, f″)`.
    pub fn derivs(&self, z: Complex) -> Result<(Complex, Complex)> {
        self.jet(z).map(|j| (j.fp, j.fpp))
    }

    pub fn jet(&self, z: Complex) -> Result<MapJet> {
        let at = pt(z);
        let j = match *self {
            MapFamily::Log { alpha, gamma, delta } => {
                let u = z * (alpha / (2.0 * gamma)) + delta;
                if u.norm() == 0.0 {
                    return Err(Error::singular(at, "log argument vanishes"));
                }
                if on_log_cut(u) {
                    return Err(Error::domain(at, "log argument on the branch cut"));
                }
                MapJet {
                    f: u.ln() / alpha,
                    fp: (u * (2.0 * gamma)).inv(),
                    fpp: -(u * u * (4.0 * gamma * gamma)).inv() * alpha,
                }
            }
            MapFamily::Asinh { a, lambda } => {
                let s = z * (lambda / (2.0 * a));
                if s.re == 0.0 && s.im.abs() >= 1.0 {
                    return Err(if s.im.abs() == 1.0 {
                        Error::singular(at, "asinh branch point")
                    } else {
                        Error::domain(at, "asinh argument on the branch cut")
                    });
                }
                let q = (s * s + 1.0).sqrt();
                MapJet {
                    f: s.asinh() / lambda,
                    fp: (q * (2.0 * a)).inv(),
                    fpp: -s * lambda / (q * q * q * (4.0 * a * a)),
                }
            }
            MapFamily::Power { lambda, beta, alpha_shift } => {
                let q = lambda + 1.0;
                let p = 1.0 / q;
                let u = (z / beta + alpha_shift) * q;
                if lambda == 0.0 {
                    MapJet { f: u, fp: c(1.0 / beta, 0.0), fpp: c(0.0, 0.0) }
                } else {
                    if u.norm() == 0.0 {
                        return Err(Error::singular(at, "power base vanishes"));
                    }
                    let f = if is_integer(p) {
                        u.powi(p as i32)
                    } else {
                        if on_log_cut(u) {
                            return Err(Error::domain(at, "power base on the branch cut"));
                        }
                        (u.ln() * p).exp()
                    };
                    let fp = f / (u * beta);
                    MapJet { f, fp, fpp: -fp * lambda / (u * beta) }
                }
            }
            MapFamily::ExpRadial { gamma, beta } => {
                let f = (z / beta).exp() * gamma;
                MapJet { f, fp: f / beta, fpp: f / (beta * beta) }
            }
            MapFamily::Inverse { b } => {
                if z.norm() == 0.0 {
                    return Err(Error::singular(at, "pole of b/z"));
                }
                let r = z.inv();
                MapJet { f: r * b, fp: -r * r * b, fpp: r * r * r * (2.0 * b) }
            }
            MapFamily::Quadratic { a } => MapJet { f: z * z * a, fp: z * (2.0 * a), fpp: c(2.0 * a, 0.0) },
            MapFamily::Logistic { a, b, lambda } => {
                let e = (-z * lambda).exp();
                let d = e * a + b;
                if d.norm() == 0.0 {
                    return Err(Error::singular(at, "pole of the logistic map"));
                }
                let r = d.inv();
                let lae = e * (lambda * a);
                MapJet { f: r, fp: lae * r * r, fpp: (lae * r * r) * (lae * r * 2.0 - lambda) }
            }
        };
        if is_finite(j.f) && is_finite(j.fp) && is_finite(j.fpp) {
            Ok(j)
        } else {
            Err(Error::NonFinite { at })
        }
    }

    pub fn y_of_x(&self, x: Point) -> Result<Point> {
        let f = self.f(c(x[0], x[1]))?;
        Ok([2.0 * f.re, -2.0 * f.im])
    }

    /// Analytic inverse `x(y)` on the principal branch.
    pub fn x_of_y(&self, y: Point) -> Result<Point> {
        let w = w_of(y);
        let z = match *self {
            MapFamily::Log { alpha, gamma, delta } => {
                let t = -alpha * y[1] / 2.0;
                if !(t > -PI && t <= PI) {
                    return Err(Error::domain(y, "y2 outside the principal strip"));
                }
                ((w * alpha).exp() - delta) * (2.0 * gamma / alpha)
            }
            MapFamily::Asinh { a, lambda } => {
                if (lambda * y[1]).abs() >= PI {
                    return Err(Error::domain(y, "y2 outside the principal strip"));
                }
                (w * lambda).sinh() * (2.0 * a / lambda)
            }
            MapFamily::Power { lambda, beta, alpha_shift } => {
                let q = lambda + 1.0;
                let u = if lambda == 0.0 {
                    w
                } else {
                    if w.norm() == 0.0 {
                        return Err(Error::singular(y, "origin of a power map"));
                    }
                    let theta = w.im.atan2(w.re);
                    if !is_integer(1.0 / q) && (q * theta).abs() >= PI {
                        return Err(Error::domain(y, "outside the principal sector"));
                    }
                    if is_integer(q) {
                        w.powi(q as i32)
                    } else {
                        (w.ln() * q).exp()
                    }
                };
                (u / q - alpha_shift) * beta
            }
            MapFamily::ExpRadial { gamma, beta } => {
                if w.norm() == 0.0 {
                    return Err(Error::singular(y, "origin of the exponential map"));
                }
                (w / gamma).ln() * beta
            }
            MapFamily::Inverse { b } => {
                if w.norm() == 0.0 {
                    return Err(Error::singular(y, "origin of the inverse map"));
                }
                w.inv() * b
            }
            MapFamily::Quadratic { a } => {
                if w.norm() == 0.0 {
                    return Err(Error::singular(y, "origin of the quadratic map"));
                }
                (-w / a).sqrt() * c(0.0, -1.0)
            }
            MapFamily::Logistic { a, b, lambda } => {
                if w.norm() == 0.0 {
                    return Err(Error::singular(y, "image of x1 -> -infinity"));
                }
                let qv = w.inv() - b;
                if qv.norm() == 0.0 {
                    return Err(Error::singular(y, "image of x1 -> +infinity"));
                }
                -(qv / a).ln() / lambda
            }
        };
        finite_point(z, y)
    }

    pub fn domain(&self) -> DomainSpec {
        let origin = [0.0, 0.0];
        let singular = |at: Point| Excluded { geometry: Geometry::Point { at }, kind: ExclusionKind::Singular };
        let ray = |o: Point, angle: f64| Excluded { geometry: Geometry::Ray { origin: o, angle }, kind: ExclusionKind::BranchCut };
        let segment = |from: Point, to: Point| Excluded { geometry: Geometry::Segment { from, to }, kind: ExclusionKind::BranchCut };
        match *self {
            MapFamily::Log { alpha, .. } => {
                let hw = 2.0 * PI / alpha.abs();
                DomainSpec { region: RegionKind::StripY2 { lo: -hw, hi: hw }, y2_period: Some(2.0 * hw), excluded: vec![] }
            }
            MapFamily::Asinh { lambda, .. } => {
                let hw = PI / lambda.abs();
                DomainSpec {
                    region: RegionKind::StripY2 { lo: -hw, hi: hw },
                    y2_period: None,
                    excluded: vec![singular([0.0, -hw]), singular([0.0, hw])],
                }
            }
            MapFamily::Power { lambda, .. } => {
                if lambda == 0.0 {
                    return DomainSpec { region: RegionKind::FullPlane, y2_period: None, excluded: vec![] };
                }
                let q = lambda + 1.0;
                let mut excluded = vec![singular(origin)];
                let region = if is_integer(1.0 / q) || q.abs() <= 1.0 {
                    if !is_integer(q) {
                        excluded.push(ray(origin, PI));
                    }
                    RegionKind::PuncturedPlane
                } else {
                    RegionKind::Sector { half_angle: PI / q.abs() }
                };
                DomainSpec { region, y2_period: None, excluded }
            }
            MapFamily::ExpRadial { gamma, .. } => DomainSpec {
                region: RegionKind::PuncturedPlane,
                y2_period: None,
                excluded: vec![singular(origin), ray(origin, if gamma > 0.0 { PI } else { 0.0 })],
            },
            MapFamily::Inverse { .. } => {
                DomainSpec { region: RegionKind::PuncturedPlane, y2_period: None, excluded: vec![singular(origin)] }
            }
            MapFamily::Quadratic { a } => DomainSpec {
                region: RegionKind::PuncturedPlane,
                y2_period: None,
                excluded: vec![singular(origin), ray(origin, if a > 0.0 { 0.0 } else { PI })],
            },
            MapFamily::Logistic { a, b, .. } => {
                let mut excluded = vec![singular(origin)];
                if b == 0.0 {
                    excluded.push(ray(origin, if a > 0.0 { PI } else { 0.0 }));
                } else {
                    let pole = [2.0 / b, 0.0];
                    excluded.push(singular(pole));
                    match (a > 0.0, b > 0.0) {
                        (true, true) => {
                            excluded.push(ray(origin, PI));
                            excluded.push(ray(pole, 0.0));
                        }
                        (false, false) => {
                            excluded.push(ray(origin, 0.0));
                            excluded.push(ray(pole, PI));
                        }
                        _ => excluded.push(segment(origin, pole)),
                    }
                }
                DomainSpec { region: RegionKind::FullPlane, y2_period: None, excluded }
            }
        }
    }
}

/// Jacobian `∂y_k/∂x_i` assembled from `f′`, indexed `[k][i]`.
pub fn jacobian(fp: Complex) -> [[f64; 2]; 2] {
    [[2.0 * fp.re, -2.0 * fp.im], [-2.0 * fp.im, -2.0 * fp.re]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexcore::oracle_derivs;
    use proptest::prelude::*;

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn forward_examples() {
        assert_eq!(MapFamily::Inverse { b: 1.0 }.f(c(2.0, 0.0)).unwrap(), c(0.5, 0.0));
        assert_eq!(MapFamily::Quadratic { a: 0.125 }.f(c(2.0, 0.0)).unwrap(), c(0.5, 0.0));
        assert_eq!(MapFamily::Logistic { a: 1.0, b: 0.0, lambda: 1.0 }.f(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(MapFamily::Inverse { b: 1.0 }.derivs(c(1.0, 0.0)).unwrap(), (c(-1.0, 0.0), c(2.0, 0.0)));
    }

    #[test]
    fn coordinate_examples() {
        assert_eq!(MapFamily::Quadratic { a: 1.0 }.y_of_x([1.0, 0.0]).unwrap(), [2.0, 0.0]);
        assert_eq!(MapFamily::Inverse { b: 1.0 }.y_of_x([1.0, 0.0]).unwrap(), [2.0, 0.0]);
        let y = MapFamily::Log { alpha: 1.0, gamma: 1.0, delta: 0.0 }.y_of_x([2.0, 0.0]).unwrap();
        assert!(y[0].abs() < 1e-15 && y[1].abs() < 1e-15);
        assert_eq!(MapFamily::Inverse { b: 1.0 }.x_of_y([2.0, 0.0]).unwrap(), [1.0, 0.0]);
        assert_eq!(MapFamily::Asinh { a: 1.0, lambda: 1.0 }.x_of_y([0.0, 0.0]).unwrap(), [0.0, 0.0]);
    }

    #[test]
    fn quadratic_inverse_on_the_positive_axis() {
        // x₁ = 2√ρ cos(φ/2) carries a = 1/8.
        let x = MapFamily::Quadratic { a: 0.125 }.x_of_y([4.0, 0.0]).unwrap();
        assert!((x[0] - 4.0).abs() < 1e-15 && x[1].abs() < 1e-15);
        let x = MapFamily::Quadratic { a: 1.0 }.x_of_y([4.0, 0.0]).unwrap();
        assert!((x[0] - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn quadratic_inverse_matches_polar_formula() {
        let a = 0.125;
        for &(rho, phi) in &[(1.0, 0.3), (2.5, 2.0), (0.7, 3.5), (4.0, 6.0)] {
            let y = [rho * f64::cos(phi), rho * f64::sin(phi)];
            let x = MapFamily::Quadratic { a }.x_of_y(y).unwrap();
            let r = (rho / (2.0 * a)).sqrt();
            assert!((x[0] - r * (phi / 2.0).cos()).abs() < 1e-12, "{phi}");
            assert!((x[1] + r * (phi / 2.0).sin()).abs() < 1e-12, "{phi}");
        }
    }

    #[test]
    fn construction_validates() {
        assert!(MapFamily::log(0.0, 1.0, 0.0).is_err());
        assert!(MapFamily::asinh(1.0, 0.0).is_err());
        assert!(MapFamily::logistic(1.0, 0.0, -1.0).is_err());
        assert!(MapFamily::logistic(1.0, 0.0, 0.0).is_err());
        assert!(MapFamily::quadratic(f64::NAN).is_err());
        match MapFamily::power(-1.0, 1.0, 0.0) {
            Err(Error::InvalidParameter { reason, .. }) => assert!(reason.contains("exp_radial")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(MapFamily::power(0.5, 1.0, 0.0).is_ok());
    }

    #[test]
    fn inverse_errors() {
        assert!(matches!(MapFamily::Inverse { b: 1.0 }.x_of_y([0.0, 0.0]), Err(Error::Singularity { .. })));
        let log = MapFamily::Log { alpha: 1.0, gamma: 1.0, delta: 0.0 };
        assert!(matches!(log.x_of_y([0.0, 7.0]), Err(Error::Domain { .. })));
        assert!(log.x_of_y([0.0, -2.0 * PI]).is_ok());
        assert!(log.x_of_y([0.0, 2.0 * PI]).is_err());
        assert!(matches!(MapFamily::Asinh { a: 1.0, lambda: 1.0 }.x_of_y([0.0, 4.0]), Err(Error::Domain { .. })));
    }

    #[test]
    fn domains() {
        let d = MapFamily::Log { alpha: 1.0, gamma: 1.0, delta: 0.0 }.domain();
        assert_eq!(d.y2_period, Some(4.0 * PI));
        assert!(matches!(d.region, RegionKind::StripY2 { .. }));
        for fam in [MapFamily::Inverse { b: 2.0 }, MapFamily::Quadratic { a: 0.5 }] {
            let d = fam.domain();
            assert_eq!(d.region, RegionKind::PuncturedPlane);
            assert_eq!(d.singular_points().collect::<Vec<_>>(), vec![[0.0, 0.0]]);
        }
        let d = MapFamily::Logistic { a: 1.0, b: 0.5, lambda: 1.0 }.domain();
        assert_eq!(d.singular_points().collect::<Vec<_>>(), vec![[0.0, 0.0], [4.0, 0.0]]);
    }

    #[test]
    fn singular_points_are_zeros_of_fprime_or_poles() {
        let fams = [
            MapFamily::Asinh { a: 1.3, lambda: 0.8 },
            MapFamily::Power { lambda: 0.5, beta: 1.0, alpha_shift: 0.3 },
            MapFamily::Quadratic { a: 0.125 },
            MapFamily::Logistic { a: 1.0, b: 0.5, lambda: 1.0 },
        ];
        for fam in fams {
            for p in fam.domain().singular_points() {
                let near = [p[0] + 1e-7, p[1] - 1e-7 * p[1].signum()];
                let far = [p[0] + 0.5, p[1] - 0.3 * p[1].signum()];
                let m = |y: Point| {
                    let x = fam.x_of_y(y).unwrap();
                    let (fp, _) = fam.derivs(c(x[0], x[1])).unwrap();
                    fp.norm()
                };
                let ratio = m(near) / m(far);
                assert!(!(1e-2..1e2).contains(&ratio), "{fam:?} at {p:?}: {ratio}");
            }
        }
    }

    #[test]
    fn sheets() {
        assert_eq!(MapFamily::Quadratic { a: 1.0 }.sheet_count(), 2);
        assert_eq!(MapFamily::Power { lambda: -0.5, beta: 1.0, alpha_shift: 0.0 }.sheet_count(), 2);
        assert_eq!(MapFamily::Power { lambda: -2.0, beta: 1.0, alpha_shift: 0.0 }.sheet_count(), 1);
        assert_eq!(MapFamily::Power { lambda: 1.0, beta: 1.0, alpha_shift: 0.0 }.sheet_count(), 1);
        assert_eq!(MapFamily::Log { alpha: 1.0, gamma: 1.0, delta: 0.0 }.sheet_count(), 1);
    }

    #[test]
    fn logistic_signs_of_derivative_identities() {
        let (a, b, lambda) = (1.0, 2.0, 3.0);
        let fam = MapFamily::Logistic { a, b, lambda };
        let z = c(0.3, -0.4);
        let j = fam.jet(z).unwrap();
        let one = c(1.0, 0.0);
        assert!(close(j.fp, j.f * (one - j.f * b) * lambda, 1e-13));
        assert!(close(j.fpp, (one - j.f * (2.0 * b)) * j.fp * lambda, 1e-13));
    }

    fn family_and_z() -> impl Strategy<Value = (MapFamily, Complex)> {
        (0usize..7, 0.05..0.95f64, 0.05..0.95f64).prop_map(|(k, s, t)| {
            let (fam, x0, x1, y0, y1) = match k {
                0 => (MapFamily::Log { alpha: 1.3, gamma: 0.7, delta: 0.2 }, 0.2, 3.0, -2.0, 2.0),
                1 => (MapFamily::Asinh { a: 1.2, lambda: 0.9 }, -2.0, 2.0, -2.0, 2.0),
                2 => (MapFamily::Power { lambda: 0.5, beta: 1.5, alpha_shift: 1.0 }, -1.0, 2.0, -1.0, 1.0),
                3 => (MapFamily::ExpRadial { gamma: 0.8, beta: 1.2 }, -2.0, 2.0, -3.0, 3.0),
                4 => (MapFamily::Inverse { b: 1.7 }, 0.3, 2.0, -2.0, 2.0),
                5 => (MapFamily::Quadratic { a: 0.125 }, -2.0, 2.0, -2.0, -0.1),
                _ => (MapFamily::Logistic { a: 1.1, b: 0.6, lambda: 1.4 }, -1.5, 1.5, -2.0, 2.0),
            };
            (fam, c(x0 + s * (x1 - x0), y0 + t * (y1 - y0)))
        })
    }

    proptest! {
        #[test]
        fn analytic_derivatives_match_jet_oracle((fam, z) in family_and_z()) {
            let j = fam.jet(z).unwrap();
            let (f, fp, fpp) = oracle_derivs(&fam, z).unwrap();
            prop_assert!(close(j.f, f, 1e-12));
            prop_assert!(close(j.fp, fp, 1e-12));
            prop_assert!(close(j.fpp, fpp, 1e-12));
        }

        #[test]
        fn round_trip((fam, z) in family_and_z()) {
            let x = [z.re, z.im];
            let back = fam.x_of_y(fam.y_of_x(x).unwrap()).unwrap();
            let scale = x[0].hypot(x[1]).max(1.0);
            prop_assert!((back[0] - x[0]).abs() <= 1e-10 * scale && (back[1] - x[1]).abs() <= 1e-10 * scale,
                "{:?}: {:?} -> {:?}", fam, x, back);
        }
    }
}

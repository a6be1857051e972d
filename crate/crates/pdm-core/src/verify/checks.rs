use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complexcore::{c, Complex};
use crate::error::{Error, Point, Result};
use crate::exec::{self, Execution};
use crate::maps::{jacobian, MapFamily};
use crate::pdmbuild::{PdmModel, TransformedState};

use super::grid::{Field2D, Grid2D, Region};
use super::operator::{residual_norms, Coefficients, PdmOperator};
use super::quadrature::gauss_legendre;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualMeasure {
    pub relative_l2: f64,
    pub max_abs: f64,
    pub cells: usize,
}

/// `‖HΨ̃ − EΨ̃‖₂/‖Ψ̃‖₂` over valid cells inside `window`.
pub fn eigen_residual(ts: &TransformedState, grid: &Grid2D, window: &Region, exec: Execution) -> Result<ResidualMeasure> {
    eigen_residual_with(ts.model(), ts, ts.energy(), grid, window, exec)
}

/// [`eigen_residual`] with explicit coefficients and energy.
pub fn eigen_residual_with<C: Coefficients>(
    coeffs: &C,
    ts: &TransformedState,
    energy: f64,
    grid: &Grid2D,
    window: &Region,
    exec: Execution,
) -> Result<ResidualMeasure> {
    let op = PdmOperator::assemble(coeffs, grid, exec)?;
    let psi = Field2D::sample(grid, exec, |y| ts.eval(y))?;
    let domain = ts.model().domain();
    let (relative_l2, max_abs, cells) = residual_norms(&op, &psi, energy, |y| window.contains(y, domain), exec)?;
    Ok(ResidualMeasure { relative_l2, max_abs, cells })
}

fn metric_defect(family: &MapFamily, fp: Complex, y: Point) -> Result<f64> {
    let xb = family.x_of_y(y)?;
    let (fpb, _) = family.derivs(c(xb[0], xb[1]))?;
    let mass = 1.0 / (4.0 * fpb.norm_sqr());
    let j = jacobian(fp);
    metric_from_jacobian(mass, j)
}

fn metric_from_jacobian(mass: f64, j: [[f64; 2]; 2]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for k in 0..2 {
        for n in 0..2 {
            let g = j[k][0] * j[n][0] + j[k][1] * j[n][1];
            let delta = if k == n { 1.0 } else { 0.0 };
            worst = worst.max((mass * g - delta).abs());
        }
    }
    Ok(worst)
}

/// Max over `points` (in x) of `|M(y(x))·(∂ᵢy_k)(∂ᵢy_n) − δ_kn|` with analytic derivatives.
///
/// `M` is computed at `y(x)` through the inverse map, so the check also exercises the round trip.
pub fn metric_residual_points(family: &MapFamily, points: &[Point]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &x in points {
        let (fp, _) = family.derivs(c(x[0], x[1]))?;
        let y = family.y_of_x(x)?;
        worst = worst.max(metric_defect(family, fp, y)?);
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Derivatives {
    Analytic,
    FiniteDifference,
}

/// Metric residual on the unmasked nodes of an x-plane grid.
pub fn metric_residual(family: &MapFamily, grid_x: &Grid2D, derivs: Derivatives, exec: Execution) -> Result<f64> {
    let nx = grid_x.nx();
    let h = grid_x.h();
    let mut rows = vec![0.0; grid_x.ny()];
    exec::try_for_each_row(exec, &mut rows, 1, |j, out| {
        let mut worst = 0.0_f64;
        for i in 0..nx {
            let x = grid_x.node(i, j);
            match derivs {
                Derivatives::Analytic => {
                    if grid_x.masked(i, j) {
                        continue;
                    }
                    let (fp, _) = family.derivs(c(x[0], x[1]))?;
                    worst = worst.max(metric_defect(family, fp, family.y_of_x(x)?)?);
                }
                Derivatives::FiniteDifference => {
                    if !grid_x.is_interior(i, j) {
                        continue;
                    }
                    let (jm, jp) = grid_x.neighbours_y2(j);
                    let ye = family.y_of_x(grid_x.node(i + 1, j))?;
                    let yw = family.y_of_x(grid_x.node(i - 1, j))?;
                    let yn = family.y_of_x(grid_x.node(i, jp))?;
                    let ys = family.y_of_x(grid_x.node(i, jm))?;
                    let jac = [
                        [(ye[0] - yw[0]) / (2.0 * h), (yn[0] - ys[0]) / (2.0 * h)],
                        [(ye[1] - yw[1]) / (2.0 * h), (yn[1] - ys[1]) / (2.0 * h)],
                    ];
                    let y = family.y_of_x(x)?;
                    let xb = family.x_of_y(y)?;
                    let (fpb, _) = family.derivs(c(xb[0], xb[1]))?;
                    worst = worst.max(metric_from_jacobian(1.0 / (4.0 * fpb.norm_sqr()), jac)?);
                }
            }
        }
        out[0] = worst;
        Ok(())
    })?;
    Ok(rows.into_iter().fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CauchyRiemann {
    /// max of `|∂₁y₁ + ∂₂y₂|` and `|∂₂y₁ − ∂₁y₂|`
    pub cauchy_riemann: f64,
    /// max of `|Δy₁|` and `|Δy₂|`
    pub harmonic: f64,
}

impl CauchyRiemann {
    fn max(self, o: CauchyRiemann) -> CauchyRiemann {
        CauchyRiemann { cauchy_riemann: self.cauchy_riemann.max(o.cauchy_riemann), harmonic: self.harmonic.max(o.harmonic) }
    }
}

const CR_ZERO: CauchyRiemann = CauchyRiemann { cauchy_riemann: 0.0, harmonic: 0.0 };

/// Central-difference residuals at `x` with spacing `h`.
pub fn cauchy_riemann_at(family: &MapFamily, x: Point, h: f64) -> Result<CauchyRiemann> {
    let y0 = family.y_of_x(x)?;
    let ye = family.y_of_x([x[0] + h, x[1]])?;
    let yw = family.y_of_x([x[0] - h, x[1]])?;
    let yn = family.y_of_x([x[0], x[1] + h])?;
    let ys = family.y_of_x([x[0], x[1] - h])?;
    let d1 = |k: usize| (ye[k] - yw[k]) / (2.0 * h);
    let d2 = |k: usize| (yn[k] - ys[k]) / (2.0 * h);
    let lap = |k: usize| ((ye[k] + yw[k] + yn[k] + ys[k] - 4.0 * y0[k]) / (h * h)).abs();
    Ok(CauchyRiemann {
        cauchy_riemann: (d1(0) + d2(1)).abs().max((d2(0) - d1(1)).abs()),
        harmonic: lap(0).max(lap(1)),
    })
}

/// Max of [`cauchy_riemann_at`] over a fixed point set, so that studies over `h` compare like with like.
pub fn cauchy_riemann_residual_points(family: &MapFamily, points: &[Point], h: f64) -> Result<CauchyRiemann> {
    points.iter().try_fold(CR_ZERO, |acc, &x| Ok(acc.max(cauchy_riemann_at(family, x, h)?)))
}

/// Central-difference Cauchy–Riemann and Laplace residuals of `y(x)` on interior nodes of an x-grid.
pub fn cauchy_riemann_residual(family: &MapFamily, grid_x: &Grid2D, exec: Execution) -> Result<CauchyRiemann> {
    let nx = grid_x.nx();
    let mut rows = vec![CR_ZERO; grid_x.ny()];
    exec::try_for_each_row(exec, &mut rows, 1, |j, out| {
        let mut acc = CR_ZERO;
        for i in 0..nx {
            if grid_x.is_interior(i, j) {
                acc = acc.max(cauchy_riemann_at(family, grid_x.node(i, j), grid_x.h())?);
            }
        }
        out[0] = acc;
        Ok(())
    })?;
    Ok(rows.into_iter().fold(CR_ZERO, CauchyRiemann::max))
}

/// Smooth cutoff: 1 for `s ≤ 1/2`, 0 for `s ≥ 1`, C^∞ in between.
pub fn bump(s: f64) -> f64 {
    let u = (2.0 * (1.0 - s)).clamp(0.0, 1.0);
    let psi = |t: f64| if t <= 0.0 { 0.0 } else { (-1.0 / t).exp() };
    let (a, b) = (psi(u), psi(1.0 - u));
    a / (a + b)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NormalizationOptions {
    /// Radius of the smooth blend around each singular point; `None` picks `max(12h, 0.1)`.
    pub blend_radius: Option<f64>,
    /// Largest accepted fraction of the integral within 3 cells of a non-periodic edge.
    pub tail_tolerance: f64,
    pub radial_nodes: usize,
    pub angular_nodes: usize,
}

impl Default for NormalizationOptions {
    fn default() -> Self {
        NormalizationOptions { blend_radius: None, tail_tolerance: 1e-6, radial_nodes: 64, angular_nodes: 256 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizationReport {
    pub integral: f64,
    pub tail_fraction: f64,
    pub blend_radius: f64,
    pub singular_points: usize,
}

/// `∫|Ψ̃|² d²y`: grid trapezoid away from singular points, polar Gauss–Legendre quadrature near them.
///
/// Masked nodes must lie inside the inner half of a blend disk.
pub fn normalization_check(
    ts: &TransformedState,
    grid: &Grid2D,
    opts: &NormalizationOptions,
    exec: Execution,
) -> Result<NormalizationReport> {
    let h = grid.h();
    let radius = opts.blend_radius.unwrap_or((12.0 * h).max(0.1));
    let (lo, hi) = (grid.origin(), grid.extent());
    let points: Vec<Point> = ts
        .model()
        .domain()
        .singular_points()
        .filter(|p| p[0] > lo[0] - radius && p[0] < hi[0] + radius && p[1] > lo[1] - radius && p[1] < hi[1] + radius)
        .collect();
    for (a, p) in points.iter().enumerate() {
        if p[0] - radius < lo[0] || p[0] + radius > hi[0] || (!grid.is_periodic_y2() && (p[1] - radius < lo[1] || p[1] + radius > hi[1])) {
            return Err(Error::Grid(format!("blend disk around ({}, {}) leaves the grid", p[0], p[1])));
        }
        for q in &points[a + 1..] {
            if (p[0] - q[0]).hypot(p[1] - q[1]) < 2.0 * radius {
                return Err(Error::Grid("blend disks overlap; reduce the blend radius".into()));
            }
        }
    }
    let chi = |y: Point| points.iter().map(|p| bump((y[0] - p[0]).hypot(y[1] - p[1]) / radius)).sum::<f64>();

    let nx = grid.nx();
    let mut rows = vec![(0.0, 0.0); grid.ny()];
    exec::try_for_each_row(exec, &mut rows, 1, |j, out| {
        let (mut total, mut tail) = (0.0, 0.0);
        for i in 0..nx {
            let y = grid.node(i, j);
            let outer = 1.0 - chi(y);
            if outer <= 0.0 {
                continue;
            }
            if grid.masked(i, j) {
                return Err(Error::Grid(format!("masked node ({}, {}) lies outside the blend cores", y[0], y[1])));
            }
            let v = ts.eval(y)?;
            let m = grid.trapezoid_weight(i, j) * outer * v * v;
            total += m;
            if grid.near_edge(i, j, 3) {
                tail += m;
            }
        }
        out[0] = (total, tail);
        Ok(())
    })?;
    let (outer_sum, tail_sum) = rows.iter().fold((0.0, 0.0), |(a, b), (c, d)| (a + c, b + d));
    let outer_integral = outer_sum * h * h;
    let tail_integral = tail_sum * h * h;

    let fine = ts.with_exclusion_radius(0.0);
    let (t_nodes, t_weights) = gauss_legendre(opts.radial_nodes);
    let mut inner = 0.0;
    for p in &points {
        let dtheta = 2.0 * PI / opts.angular_nodes as f64;
        for k in 0..opts.angular_nodes {
            let theta = (k as f64 + 0.5) * dtheta;
            let (s, co) = theta.sin_cos();
            for (&tn, &tw) in t_nodes.iter().zip(&t_weights) {
                let t = 0.5 * (tn + 1.0);
                let rho = radius * t * t;
                let y = [p[0] + rho * co, p[1] + rho * s];
                let v = match fine.eval(y) {
                    Ok(v) => v,
                    Err(Error::Domain { .. }) => 0.0,
                    Err(e) => return Err(e),
                };
                inner += 0.5 * tw * dtheta * bump(t * t) * v * v * rho * 2.0 * radius * t;
            }
        }
    }
    let integral = outer_integral + inner;
    let tail_fraction = if integral > 0.0 { tail_integral / integral } else { 0.0 };
    if tail_fraction > opts.tail_tolerance {
        return Err(Error::Extent { tail: tail_fraction, tolerance: opts.tail_tolerance });
    }
    Ok(NormalizationReport { integral, tail_fraction, blend_radius: radius, singular_points: points.len() })
}

/// Normalization integral for each blend radius in `radii`.
pub fn normalization_radius_study(
    ts: &TransformedState,
    grid: &Grid2D,
    radii: &[f64],
    opts: &NormalizationOptions,
    exec: Execution,
) -> Result<Vec<(f64, f64)>> {
    radii
        .iter()
        .map(|&r| {
            let o = NormalizationOptions { blend_radius: Some(r), ..*opts };
            normalization_check(ts, grid, &o, exec).map(|rep| (r, rep.integral))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayReport {
    pub boundary_max: f64,
    pub interior_max: f64,
    pub ratio: f64,
    pub skipped: usize,
}

/// Ratio of the largest `|Ψ̃|²/√M` on `boundary` to the largest on `interior`.
///
/// Points where the state cannot be evaluated are skipped and counted.
pub fn hermiticity_decay(ts: &TransformedState, boundary: &[Point], interior: &[Point]) -> DecayReport {
    let mut skipped = 0;
    let mut density_max = |pts: &[Point]| {
        let mut best = 0.0_f64;
        for &y in pts {
            match (ts.eval(y), ts.model().mass(y)) {
                (Ok(v), Ok(m)) => best = best.max(v * v / m.sqrt()),
                _ => skipped += 1,
            }
        }
        best
    };
    let boundary_max = density_max(boundary);
    let interior_max = density_max(interior);
    let ratio = if boundary_max == 0.0 { 0.0 } else { boundary_max / interior_max };
    DecayReport { boundary_max, interior_max, ratio, skipped }
}

/// Boundary samples on the non-periodic grid edges and interior samples on all unmasked nodes.
pub fn hermiticity_decay_on_grid(ts: &TransformedState, grid: &Grid2D) -> DecayReport {
    hermiticity_decay(ts, &grid.boundary_nodes(), &grid.unmasked_nodes())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub h: f64,
    pub residual: f64,
    /// `log₂(r(h_prev)/r(h)) / log₂(h_prev/h)` relative to the previous row.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    pub warnings: Vec<String>,
}

impl ConvergenceTable {
    pub fn orders(&self) -> Vec<f64> {
        self.rows.iter().filter_map(|r| r.order).collect()
    }
}

/// Runs `residual(h)` for each spacing and reports observed orders.
pub fn convergence_study<F>(h_list: &[f64], mut residual: F) -> Result<ConvergenceTable>
where
    F: FnMut(f64) -> Result<f64>,
{
    if h_list.len() < 3 {
        return Err(Error::InvalidParameter { name: "h_list", reason: "needs at least three spacings".into() });
    }
    if h_list.windows(2).any(|w| !(w[1] < w[0])) || h_list.iter().any(|h| !(*h > 0.0)) {
        return Err(Error::InvalidParameter { name: "h_list", reason: "must be positive and strictly decreasing".into() });
    }
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    let mut warnings = Vec::new();
    for &h in h_list {
        let r = residual(h)?;
        let order = rows.last().map(|prev| (prev.residual / r).log2() / (prev.h / h).log2());
        if let Some(prev) = rows.last() {
            if r > prev.residual {
                warnings.push(format!("residual increased from {:.3e} at h={} to {:.3e} at h={}", prev.residual, prev.h, r, h));
            }
        }
        rows.push(ConvergenceRow { h, residual: r, order });
    }
    Ok(ConvergenceTable { rows, warnings })
}

/// Model-level residual study: one masked grid per spacing built by `grid_for(h)`.
pub fn eigen_residual_convergence<G>(
    ts: &TransformedState,
    h_list: &[f64],
    window: &Region,
    mut grid_for: G,
    exec: Execution,
) -> Result<ConvergenceTable>
where
    G: FnMut(&PdmModel, f64) -> Result<Grid2D>,
{
    convergence_study(h_list, |h| {
        let g = grid_for(ts.model(), h)?;
        eigen_residual(ts, &g, window, exec).map(|m| m.relative_l2)
    })
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Point, Result};
use crate::exec::{self, Execution};
use crate::pdmbuild::PdmModel;

use super::grid::{Field2D, Grid2D};

/// Pointwise coefficients of `−∂ᵢ k ∂ᵢ + U` with `k = 1/M`.
pub trait Coefficients: Sync {
    fn inv_mass(&self, y: Point) -> Result<f64>;
    fn potential(&self, y: Point) -> Result<f64>;
}

impl Coefficients for PdmModel {
    fn inv_mass(&self, y: Point) -> Result<f64> {
        PdmModel::inv_mass(self, y)
    }

    fn potential(&self, y: Point) -> Result<f64> {
        PdmModel::potential(self, y)
    }
}

/// Coefficients given by two closures.
pub struct FnCoefficients<K, U> {
    pub k: K,
    pub u: U,
}

impl<K, U> Coefficients for FnCoefficients<K, U>
where
    K: Fn(Point) -> f64 + Sync,
    U: Fn(Point) -> f64 + Sync,
{
    fn inv_mass(&self, y: Point) -> Result<f64> {
        Ok((self.k)(y))
    }

    fn potential(&self, y: Point) -> Result<f64> {
        Ok((self.u)(y))
    }
}

/// Effective potential with the conformal term not divided by `M`.
pub struct UncorrectedPotential<'a>(pub &'a PdmModel);

impl Coefficients for UncorrectedPotential<'_> {
    fn inv_mass(&self, y: Point) -> Result<f64> {
        self.0.inv_mass(y)
    }

    fn potential(&self, y: Point) -> Result<f64> {
        self.0.potential_uncorrected(y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stencil {
    /// Flux form with `k` at face midpoints.
    Conservative,
    /// Expanded form `−k Δψ − ∇k·∇ψ` with nodal `k` and central differences.
    NonConservative,
}

/// Assembled discrete operator on the interior cells of a grid.
pub struct PdmOperator<'g> {
    grid: &'g Grid2D,
    stencil: Stencil,
    valid: Vec<bool>,
    /// Conservative: `k` on the face between `(i,j)` and `(i+1,j)`. Non-conservative: nodal `k`.
    kx: Vec<f64>,
    /// Conservative: `k` on the face between `(i,j)` and `(i,j+1)`. Unused otherwise.
    ky: Vec<f64>,
    u: Vec<f64>,
}

impl<'g> PdmOperator<'g> {
    pub fn assemble<C: Coefficients>(coeffs: &C, grid: &'g Grid2D, exec: Execution) -> Result<Self> {
        Self::assemble_with(coeffs, grid, Stencil::Conservative, exec)
    }

    pub fn assemble_with<C: Coefficients>(coeffs: &C, grid: &'g Grid2D, stencil: Stencil, exec: Execution) -> Result<Self> {
        grid.require_interior()?;
        let (nx, ny, h) = (grid.nx(), grid.ny(), grid.h());
        let mut valid = vec![false; grid.len()];
        exec::for_each_row(exec, &mut valid, nx, |j, row| {
            for (i, v) in row.iter_mut().enumerate() {
                *v = grid.is_interior(i, j);
            }
        });
        let valid_at = |i: usize, j: usize| valid[grid.idx(i, j)];
        let checked = |v: Result<f64>, y: Point| -> Result<f64> {
            match v {
                Ok(x) if x.is_finite() => Ok(x),
                Ok(_) => Err(Error::NonFinite { at: y }),
                Err(e) => Err(e),
            }
        };

        let mut u = vec![f64::NAN; grid.len()];
        exec::try_for_each_row(exec, &mut u, nx, |j, row| {
            for (i, v) in row.iter_mut().enumerate() {
                if valid_at(i, j) {
                    let y = grid.node(i, j);
                    *v = checked(coeffs.potential(y), y)?;
                }
            }
            Ok(())
        })?;

        let mut kx = vec![f64::NAN; grid.len()];
        let mut ky = vec![f64::NAN; grid.len()];
        match stencil {
            Stencil::Conservative => {
                exec::try_for_each_row(exec, &mut kx, nx, |j, row| {
                    for (i, v) in row.iter_mut().enumerate().take(nx - 1) {
                        if valid_at(i, j) || valid_at(i + 1, j) {
                            let y = [grid.node(i, j)[0] + 0.5 * h, grid.node(i, j)[1]];
                            *v = checked(coeffs.inv_mass(y), y)?;
                        }
                    }
                    Ok(())
                })?;
                exec::try_for_each_row(exec, &mut ky, nx, |j, row| {
                    let (_, jp) = grid.neighbours_y2(j);
                    if !grid.is_periodic_y2() && j + 1 >= ny {
                        return Ok(());
                    }
                    for (i, v) in row.iter_mut().enumerate() {
                        if valid_at(i, j) || valid_at(i, jp) {
                            let y = [grid.node(i, j)[0], grid.node(i, j)[1] + 0.5 * h];
                            *v = checked(coeffs.inv_mass(y), y)?;
                        }
                    }
                    Ok(())
                })?;
            }
            Stencil::NonConservative => {
                exec::try_for_each_row(exec, &mut kx, nx, |j, row| {
                    for (i, v) in row.iter_mut().enumerate() {
                        if !grid.masked(i, j) {
                            let y = grid.node(i, j);
                            *v = checked(coeffs.inv_mass(y), y)?;
                        }
                    }
                    Ok(())
                })?;
            }
        }
        Ok(PdmOperator { grid, stencil, valid, kx, ky, u })
    }

    pub fn grid(&self) -> &Grid2D {
        self.grid
    }

    pub fn is_valid(&self, i: usize, j: usize) -> bool {
        self.valid[self.grid.idx(i, j)]
    }

    pub fn valid_count(&self) -> usize {
        self.valid.iter().filter(|v| **v).count()
    }

    fn apply_at(&self, psi: &[f64], i: usize, j: usize) -> f64 {
        let g = self.grid;
        let inv_h2 = 1.0 / (g.h() * g.h());
        let (jm, jp) = g.neighbours_y2(j);
        let c = g.idx(i, j);
        let (w, e, s, n) = (g.idx(i - 1, j), g.idx(i + 1, j), g.idx(i, jm), g.idx(i, jp));
        let p = psi[c];
        match self.stencil {
            Stencil::Conservative => {
                let flux = self.kx[c] * (psi[e] - p) - self.kx[w] * (p - psi[w]) + self.ky[c] * (psi[n] - p)
                    - self.ky[s] * (p - psi[s]);
                -inv_h2 * flux + self.u[c] * p
            }
            Stencil::NonConservative => {
                let k = self.kx[c];
                let lap = psi[e] + psi[w] + psi[n] + psi[s] - 4.0 * p;
                let grad = (self.kx[e] - self.kx[w]) * (psi[e] - psi[w]) + (self.kx[n] - self.kx[s]) * (psi[n] - psi[s]);
                -inv_h2 * (k * lap + 0.25 * grad) + self.u[c] * p
            }
        }
    }

    /// `H ψ` on valid cells, NaN elsewhere.
    pub fn apply(&self, psi: &Field2D, exec: Execution) -> Result<Field2D> {
        let g = self.grid;
        if psi.nx != g.nx() || psi.ny != g.ny() {
            return Err(Error::Grid("field and operator grids differ".into()));
        }
        let mut out = Field2D::zeros(g);
        exec::for_each_row(exec, &mut out.values, g.nx(), |j, row| {
            for (i, v) in row.iter_mut().enumerate() {
                *v = if self.is_valid(i, j) { self.apply_at(&psi.values, i, j) } else { f64::NAN };
            }
        });
        Ok(out)
    }

    /// Maximum absolute row sum over valid cells.
    pub fn norm_estimate(&self) -> f64 {
        let g = self.grid;
        let inv_h2 = 1.0 / (g.h() * g.h());
        let mut best = 0.0_f64;
        for j in 0..g.ny() {
            for i in 0..g.nx() {
                if !self.is_valid(i, j) {
                    continue;
                }
                let (jm, _) = g.neighbours_y2(j);
                let c = g.idx(i, j);
                let row = match self.stencil {
                    Stencil::Conservative => {
                        let off = self.kx[c] + self.kx[g.idx(i - 1, j)] + self.ky[c] + self.ky[g.idx(i, jm)];
                        2.0 * inv_h2 * off + self.u[c].abs()
                    }
                    Stencil::NonConservative => 8.0 * inv_h2 * self.kx[c] + self.u[c].abs(),
                };
                best = best.max(row);
            }
        }
        best
    }

    /// `|⟨φ,Hψ⟩ − ⟨Hφ,ψ⟩| / (‖φ‖‖ψ‖‖H‖)` for random φ, ψ supported on the valid cells.
    pub fn symmetry_defect(&self, seed: u64, exec: Execution) -> Result<f64> {
        let g = self.grid;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut phi = Field2D::zeros(g);
        let mut psi = Field2D::zeros(g);
        for k in 0..g.len() {
            if self.valid[k] {
                phi.values[k] = rng.gen_range(-1.0..1.0);
                psi.values[k] = rng.gen_range(-1.0..1.0);
            }
        }
        let hpsi = self.apply(&psi, exec)?;
        let hphi = self.apply(&phi, exec)?;
        let nx = g.nx();
        let row_sum = |a: &Field2D, b: &Field2D| {
            exec::sum_rows(exec, g.ny(), |j| {
                (0..nx).filter(|&i| self.valid[j * nx + i]).map(|i| a.values[j * nx + i] * b.values[j * nx + i]).sum()
            })
        };
        let lhs = row_sum(&phi, &hpsi);
        let rhs = row_sum(&hphi, &psi);
        let norms = row_sum(&phi, &phi).sqrt() * row_sum(&psi, &psi).sqrt();
        Ok((lhs - rhs).abs() / (norms * self.norm_estimate()))
    }
}

/// `r = ‖Hψ − Eψ‖₂ / ‖ψ‖₂` and the max-norm of `Hψ − Eψ` over valid cells accepted by `keep`.
pub(crate) fn residual_norms<F>(op: &PdmOperator, psi: &Field2D, energy: f64, keep: F, exec: Execution) -> Result<(f64, f64, usize)>
where
    F: Fn(Point) -> bool + Sync + Send,
{
    let hpsi = op.apply(psi, exec)?;
    let g = op.grid();
    let nx = g.nx();
    let cell = |j: usize, i: usize| op.is_valid(i, j) && keep(g.node(i, j));
    let res2 = exec::sum_rows(exec, g.ny(), |j| {
        (0..nx).filter(|&i| cell(j, i)).map(|i| (hpsi.get(i, j) - energy * psi.get(i, j)).powi(2)).sum()
    });
    let norm2 = exec::sum_rows(exec, g.ny(), |j| (0..nx).filter(|&i| cell(j, i)).map(|i| psi.get(i, j).powi(2)).sum());
    let max = exec::max_rows(exec, g.ny(), |j| {
        (0..nx).filter(|&i| cell(j, i)).map(|i| (hpsi.get(i, j) - energy * psi.get(i, j)).abs()).fold(0.0, f64::max)
    });
    let cells = (0..g.ny()).map(|j| (0..nx).filter(|&i| cell(j, i)).count()).sum();
    if cells == 0 {
        return Err(Error::Grid("measurement window contains no valid cells".into()));
    }
    if norm2 == 0.0 {
        return Ok((0.0, max, cells));
    }
    Ok(((res2 / norm2).sqrt(), max, cells))
}

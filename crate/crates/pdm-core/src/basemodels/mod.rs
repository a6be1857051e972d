//! Constant-mass base problems `(−∂ᵢ∂ᵢ + V) Ψ = E Ψ` in the x-plane.

mod hermite;
pub mod tridiag;

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use hermite::{hermite_eval, hermite_function, HERMITE_CAP, STATE_CAP};

use crate::error::{Error, Point, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OneDimPotential {
    /// `C (e^{−2λx} − 2e^{−λx})`
    Morse { c: f64, lambda: f64 },
    /// `A cot²(λx) + B cot(λx)` on `(0, π/λ)`
    RosenMorseTrig { a: f64, b: f64, lambda: f64 },
    /// `ω² x²`
    Oscillator1d { omega: f64 },
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, reason: "must be positive and finite".into() })
    }
}

impl OneDimPotential {
    pub fn validate(&self) -> Result<()> {
        match *self {
            OneDimPotential::Morse { c, lambda } => positive("c", c).and(positive("lambda", lambda)),
            OneDimPotential::RosenMorseTrig { a, b, lambda } => {
                positive("a", a)?;
                positive("b", b)?;
                positive("lambda", lambda)
            }
            OneDimPotential::Oscillator1d { omega } => positive("omega", omega),
        }
    }

    /// Open interval on which the potential is defined.
    pub fn interval(&self) -> (f64, f64) {
        match *self {
            OneDimPotential::RosenMorseTrig { lambda, .. } => (0.0, PI / lambda),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Energy above which states are not bound; `None` for confining potentials.
    pub fn continuum_threshold(&self) -> Option<f64> {
        match self {
            OneDimPotential::Morse { .. } => Some(0.0),
            _ => None,
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match *self {
            OneDimPotential::Morse { c, lambda } => {
                let e = (-lambda * x).exp();
                Ok(c * (e * e - 2.0 * e))
            }
            OneDimPotential::RosenMorseTrig { a, b, lambda } => {
                let t = lambda * x;
                if !(t > 0.0 && t < PI) {
                    return Err(Error::Domain { at: [x, 0.0], detail: "outside (0, pi/lambda)".into() });
                }
                let cot = t.cos() / t.sin();
                Ok(a * cot * cot + b * cot)
            }
            OneDimPotential::Oscillator1d { omega } => Ok(omega * omega * x * x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BasePotential {
    AnisotropicOscillator { omega1: f64, omega2: f64 },
    Separable { v1: OneDimPotential, v2: OneDimPotential },
}

impl BasePotential {
    pub fn validate(&self) -> Result<()> {
        match self {
            BasePotential::AnisotropicOscillator { omega1, omega2 } => {
                positive("omega1", *omega1)?;
                positive("omega2", *omega2)
            }
            BasePotential::Separable { v1, v2 } => {
                v1.validate()?;
                v2.validate()
            }
        }
    }

    pub fn eval(&self, x: Point) -> Result<f64> {
        match self {
            BasePotential::AnisotropicOscillator { omega1, omega2 } => {
                Ok(omega1 * omega1 * x[0] * x[0] + omega2 * omega2 * x[1] * x[1])
            }
            BasePotential::Separable { v1, v2 } => {
                let a = v1.eval(x[0]).map_err(|e| relabel(e, x))?;
                let b = v2.eval(x[1]).map_err(|e| relabel(e, x))?;
                Ok(a + b)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            BasePotential::AnisotropicOscillator { omega1, omega2 } => {
                format!("V(x) = {}*x1^2 + {}*x2^2", omega1 * omega1, omega2 * omega2)
            }
            BasePotential::Separable { v1, v2 } => format!("V(x) = V1(x1) + V2(x2), V1 = {v1:?}, V2 = {v2:?}"),
        }
    }
}

fn relabel(e: Error, x: Point) -> Error {
    match e {
        Error::Domain { detail, .. } => Error::Domain { at: x, detail },
        other => other,
    }
}

/// Interior nodes `x₀ + i·h`, `i < n`; homogeneous Dirichlet values sit at `x₀ − h` and `x₀ + n·h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid1D {
    pub x0: f64,
    pub h: f64,
    pub n: usize,
}

impl Grid1D {
    pub fn node(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.h
    }

    /// Grid of `n` interior nodes strictly inside `(lo, hi)`.
    pub fn spanning(lo: f64, hi: f64, n: usize) -> Self {
        let h = (hi - lo) / (n + 1) as f64;
        Grid1D { x0: lo + h, h, n }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenpair1D {
    pub energy: f64,
    pub samples: Vec<f64>,
    pub grid: Grid1D,
    pub norm: f64,
}

impl Eigenpair1D {
    /// Piecewise-cubic Lagrange interpolation including the Dirichlet end values; zero outside.
    pub fn eval(&self, x: f64) -> f64 {
        let g = &self.grid;
        let n = g.n as isize;
        let t = (x - g.x0) / g.h;
        if !(t > -1.0 && t < n as f64) {
            return 0.0;
        }
        let sample = |i: isize| if i < 0 || i >= n { 0.0 } else { self.samples[i as usize] };
        let i0 = (t.floor() as isize).clamp(-1, n - 1);
        let start = (i0 - 1).clamp(-1, n - 3);
        let s = t - start as f64;
        let mut acc = 0.0;
        for k in 0..4 {
            let mut w = 1.0;
            for m in 0..4 {
                if m != k {
                    w *= (s - m as f64) / (k as f64 - m as f64);
                }
            }
            acc += w * sample(start + k as isize);
        }
        acc
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.grid.n).map(|i| self.grid.node(i))
    }
}

/// Lowest `k` eigenpairs of `−d²/dx² + v` on `grid` with Dirichlet ends.
pub fn solve_1d(v: &OneDimPotential, grid: Grid1D, k: usize) -> Result<Vec<Eigenpair1D>> {
    v.validate()?;
    if k == 0 {
        return Err(Error::InvalidParameter { name: "k", reason: "must be at least 1".into() });
    }
    if grid.n < k.max(3) || !(grid.h > 0.0) || !grid.h.is_finite() {
        return Err(Error::Grid(format!("1D grid with n={} h={} cannot resolve {k} states", grid.n, grid.h)));
    }
    if grid.n > 200_000 {
        return Err(Error::Capacity { what: "1D grid size", limit: 200_000 });
    }
    let (lo, hi) = v.interval();
    if grid.node(0) <= lo || grid.node(grid.n - 1) >= hi {
        return Err(Error::Domain {
            at: [grid.node(0), grid.node(grid.n - 1)],
            detail: "1D grid leaves the potential's interval".into(),
        });
    }
    let inv_h2 = 1.0 / (grid.h * grid.h);
    let d = (0..grid.n).map(|i| Ok(2.0 * inv_h2 + v.eval(grid.node(i))?)).collect::<Result<Vec<f64>>>()?;
    let e = vec![-inv_h2; grid.n - 1];

    let available = match v.continuum_threshold() {
        Some(th) => tridiag::sturm_count(&d, &e, th),
        None => grid.n,
    };
    if available < k {
        return Err(Error::BoundStateCount { requested: k, found: available });
    }

    (0..k)
        .map(|idx| {
            let energy = tridiag::bisect_eigenvalue(&d, &e, idx);
            let mut samples = tridiag::inverse_iteration(&d, &e, energy);
            let peak = samples.iter().fold(0.0_f64, |m, s| m.max(s.abs()));
            let first = samples.iter().copied().find(|s| s.abs() > 1e-8 * peak).unwrap_or(1.0);
            let norm = (grid.h * samples.iter().map(|s| s * s).sum::<f64>()).sqrt();
            let scale = first.signum() / norm;
            samples.iter_mut().for_each(|s| *s *= scale);
            let norm = grid.h * samples.iter().map(|s| s * s).sum::<f64>();
            Ok(Eigenpair1D { energy, samples, grid, norm })
        })
        .collect()
}

/// An eigenstate of a base problem.
#[derive(Debug, Clone, PartialEq)]
pub enum BaseState {
    Oscillator { n1: u32, n2: u32, omega1: f64, omega2: f64 },
    Separable { e1: Arc<Eigenpair1D>, e2: Arc<Eigenpair1D> },
}

pub fn oscillator_state(omega1: f64, omega2: f64, n1: u32, n2: u32) -> Result<BaseState> {
    positive("omega1", omega1)?;
    positive("omega2", omega2)?;
    if n1 > STATE_CAP || n2 > STATE_CAP {
        return Err(Error::Capacity { what: "oscillator quantum number", limit: STATE_CAP as usize });
    }
    Ok(BaseState::Oscillator { n1, n2, omega1, omega2 })
}

impl BaseState {
    pub fn energy(&self) -> f64 {
        match self {
            BaseState::Oscillator { n1, n2, omega1, omega2 } => {
                (2 * n1 + 1) as f64 * omega1 + (2 * n2 + 1) as f64 * omega2
            }
            BaseState::Separable { e1, e2 } => e1.energy + e2.energy,
        }
    }

    pub fn eval(&self, x: Point) -> f64 {
        match self {
            BaseState::Oscillator { n1, n2, omega1, omega2 } => {
                let (s1, s2) = (omega1.sqrt(), omega2.sqrt());
                s1.sqrt() * hermite_function(*n1, s1 * x[0]) * s2.sqrt() * hermite_function(*n2, s2 * x[1])
            }
            BaseState::Separable { e1, e2 } => e1.eval(x[0]) * e2.eval(x[1]),
        }
    }

    /// Whether this state is an eigenstate of `potential`.
    pub fn belongs_to(&self, potential: &BasePotential) -> bool {
        match (self, potential) {
            (
                BaseState::Oscillator { omega1, omega2, .. },
                BasePotential::AnisotropicOscillator { omega1: w1, omega2: w2 },
            ) => omega1 == w1 && omega2 == w2,
            (BaseState::Separable { .. }, BasePotential::Separable { .. }) => true,
            _ => false,
        }
    }

    pub fn label(&self) -> String {
        match self {
            BaseState::Oscillator { n1, n2, .. } => format!("oscillator({n1},{n2})"),
            BaseState::Separable { e1, e2 } => format!("separable(E1={:.10}, E2={:.10})", e1.energy, e2.energy),
        }
    }
}

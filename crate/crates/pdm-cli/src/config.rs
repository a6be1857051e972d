//! Declarative model configuration (TOML).

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use pdm_core::basemodels::{oscillator_state, solve_1d, BasePotential, BaseState, Grid1D};
use pdm_core::maps::MapFamily;
use pdm_core::pdmbuild::{PdmModel, TransformedState};
use pdm_core::verify::{default_mask_eps, Grid2D, Region};
use pdm_core::Execution;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    #[serde(default)]
    pub checks: Vec<CheckName>,
    #[serde(default)]
    pub outputs: Vec<OutputKind>,
    pub family: MapFamily,
    pub base: BasePotential,
    pub state: StateConfig,
    pub grid: GridConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<Region>,
    #[serde(default)]
    pub settings: Settings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateConfig {
    /// Quantum numbers `[n1, n2]`; for separable bases these index the 1D eigenpairs.
    pub n: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    pub grid1: Grid1D,
    pub grid2: Grid1D,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub origin: [f64; 2],
    pub h: f64,
    pub nx: usize,
    pub ny: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub periodic_y2: bool,
}

impl GridConfig {
    pub fn build(&self) -> Result<Grid2D, CliError> {
        let g = Grid2D::new(self.origin, self.h, self.nx, self.ny).map_err(|e| CliError::Config(format!("grid: {e}")))?;
        Ok(if self.periodic_y2 { g.into_periodic_y2() } else { g })
    }

    /// Same extent with spacing `h`.
    pub fn with_h(&self, h: f64) -> GridConfig {
        let span = |n: usize| (n - 1) as f64 * self.h;
        let (nx, ny) = if self.periodic_y2 {
            ((span(self.nx) / h).round() as usize + 1, ((self.ny as f64 * self.h) / h).round() as usize)
        } else {
            ((span(self.nx) / h).round() as usize + 1, (span(self.ny) / h).round() as usize + 1)
        };
        let h = if self.periodic_y2 { self.ny as f64 * self.h / ny as f64 } else { h };
        GridConfig { origin: self.origin, h, nx, ny, periodic_y2: self.periodic_y2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    EigenResidual,
    Convergence,
    Normalization,
    Hermiticity,
    Symmetry,
    Metric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Mass,
    Potential,
    States,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Settings {
    /// Mask radius around excluded sets; defaults to `max(3h, 1e-3)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mask_eps: Option<f64>,
    pub eigen_residual: EigenSettings,
    pub convergence: ConvergenceSettings,
    pub normalization: NormalizationSettings,
    pub hermiticity: HermiticitySettings,
    pub symmetry: SymmetrySettings,
    pub metric: MetricSettings,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EigenSettings {
    pub tolerance: f64,
    /// Added to the base energy; a non-zero value turns the check into a negative control.
    pub energy_offset: f64,
}

impl Default for EigenSettings {
    fn default() -> Self {
        EigenSettings { tolerance: 5e-3, energy_offset: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConvergenceSettings {
    pub h: Vec<f64>,
    pub expected_order: f64,
    /// Largest accepted `|order − expected_order|`.
    pub tolerance: f64,
}

impl Default for ConvergenceSettings {
    fn default() -> Self {
        ConvergenceSettings { h: vec![0.04, 0.02, 0.01], expected_order: 2.0, tolerance: 0.2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NormalizationSettings {
    /// Largest accepted `|∫|Ψ̃|² − 1|`.
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blend_radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
}

impl Default for NormalizationSettings {
    fn default() -> Self {
        NormalizationSettings { tolerance: 1e-3, blend_radius: None, grid: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HermiticitySettings {
    pub tolerance: f64,
    /// Boundary samples are taken on this grid's edges; defaults to the main grid.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
}

impl Default for HermiticitySettings {
    fn default() -> Self {
        HermiticitySettings { tolerance: 1e-6, grid: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SymmetrySettings {
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for SymmetrySettings {
    fn default() -> Self {
        SymmetrySettings { tolerance: 1e-12, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MetricSettings {
    pub tolerance: f64,
}

impl Default for MetricSettings {
    fn default() -> Self {
        MetricSettings { tolerance: 1e-12 }
    }
}

/// Command-line overrides applied after parsing.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub grid_h: Option<f64>,
    pub mask_eps: Option<f64>,
    pub tol_scale: Option<f64>,
}

impl ModelConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: ModelConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.family.validate().map_err(|e| CliError::Config(format!("family: {e}")))?;
        self.base.validate().map_err(|e| CliError::Config(format!("base: {e}")))?;
        if self.state.n.is_empty() {
            return Err(CliError::Config("state.n: at least one state is required".into()));
        }
        match (&self.base, &self.state.solver) {
            (BasePotential::Separable { .. }, None) => {
                return Err(CliError::Config("state.solver: required for a separable base".into()))
            }
            (BasePotential::AnisotropicOscillator { .. }, Some(_)) => {
                return Err(CliError::Config("state.solver: only valid for a separable base".into()))
            }
            _ => {}
        }
        self.grid.build()?;
        let c = &self.settings.convergence;
        if self.checks.contains(&CheckName::Convergence) && c.h.len() < 3 {
            return Err(CliError::Config("settings.convergence.h: needs at least three spacings".into()));
        }
        Ok(())
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<(), CliError> {
        if let Some(h) = o.grid_h {
            if !(h > 0.0) {
                return Err(CliError::Config(format!("--grid-h must be positive, got {h}")));
            }
            self.grid = self.grid.with_h(h);
        }
        if let Some(eps) = o.mask_eps {
            if !(eps >= 0.0) {
                return Err(CliError::Config(format!("--mask-eps must be non-negative, got {eps}")));
            }
            self.settings.mask_eps = Some(eps);
        }
        if let Some(s) = o.tol_scale {
            if !(s > 0.0) {
                return Err(CliError::Config(format!("--tol-scale must be positive, got {s}")));
            }
            let t = &mut self.settings;
            t.eigen_residual.tolerance *= s;
            t.convergence.tolerance *= s;
            t.normalization.tolerance *= s;
            t.hermiticity.tolerance *= s;
            t.symmetry.tolerance *= s;
            t.metric.tolerance *= s;
        }
        self.validate()
    }

    pub fn model(&self) -> Result<PdmModel, CliError> {
        PdmModel::new(self.family, self.base.clone()).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn mask_eps(&self, h: f64) -> f64 {
        self.settings.mask_eps.unwrap_or_else(|| default_mask_eps(h))
    }

    /// Main grid with cut bands and singular points masked.
    pub fn residual_grid(&self, model: &PdmModel, grid: &GridConfig) -> Result<Grid2D, CliError> {
        Ok(grid.build()?.mask_model(model, self.mask_eps(grid.h), true, Execution::default()))
    }

    pub fn states(&self, model: &PdmModel) -> Result<Vec<TransformedState>, CliError> {
        let base_states = match (&self.base, &self.state.solver) {
            (BasePotential::AnisotropicOscillator { omega1, omega2 }, _) => self
                .state
                .n
                .iter()
                .map(|n| oscillator_state(*omega1, *omega2, n[0], n[1]))
                .collect::<pdm_core::Result<Vec<_>>>()?,
            (BasePotential::Separable { v1, v2 }, Some(solver)) => {
                let k1 = self.state.n.iter().map(|n| n[0]).max().unwrap_or(0) as usize + 1;
                let k2 = self.state.n.iter().map(|n| n[1]).max().unwrap_or(0) as usize + 1;
                let s1: Vec<_> = solve_1d(v1, solver.grid1, k1)?.into_iter().map(Arc::new).collect();
                let s2: Vec<_> = solve_1d(v2, solver.grid2, k2)?.into_iter().map(Arc::new).collect();
                self.state
                    .n
                    .iter()
                    .map(|n| BaseState::Separable { e1: s1[n[0] as usize].clone(), e2: s2[n[1] as usize].clone() })
                    .collect()
            }
            (BasePotential::Separable { .. }, None) => {
                return Err(CliError::Config("state.solver: required for a separable base".into()))
            }
        };
        base_states
            .into_iter()
            .map(|b| TransformedState::new(model.clone(), b).map_err(|e| CliError::Config(e.to_string())))
            .collect()
    }
}

pub fn state_label(n: [u32; 2]) -> String {
    format!("psi_{}_{}", n[0], n[1])
}

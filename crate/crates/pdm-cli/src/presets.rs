//! Figure presets `fig1` … `fig10`.
//!
//! Figures 1–5 use the log map with α = γ = 1, δ = 0; figures 6–10 the
//! quadratic map with a = 1/8. Both use the oscillator with ω = (1, √2).
//!
//! | preset | field | y₁ range | y₂ range | h |
//! |---|---|---|---|---|
//! | fig1–fig5 | M, U, Ψ̃₀₀, Ψ̃₁₀, Ψ̃₀₁ | [−80h, 60h] ≈ [−3.99, 2.99] | [−2π, 2π), periodic | 4π/252 |
//! | fig6–fig10 | M, U, Ψ̃₀₀, Ψ̃₁₀, Ψ̃₀₁ | [−6, 6] | [−6, 6] | 0.05 |

use std::f64::consts::{PI, SQRT_2};

use pdm_core::basemodels::BasePotential;
use pdm_core::maps::MapFamily;

use crate::config::{GridConfig, ModelConfig, OutputKind, Settings, StateConfig};
use crate::heatmap::Colormap;

pub const PRESETS: [&str; 10] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureField {
    Mass,
    Potential,
    State([u32; 2]),
}

#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub caption: &'static str,
    pub field: FigureField,
    pub config: ModelConfig,
}

impl Preset {
    pub fn colormap(&self) -> Colormap {
        match self.field {
            FigureField::State(n) if n != [0, 0] => Colormap::Diverging,
            _ => Colormap::Sequential,
        }
    }
}

/// Spacing of the log-map presets: 252 nodes per y₂ period of 4π.
pub fn log_spacing() -> f64 {
    4.0 * PI / 252.0
}

fn log_grid() -> GridConfig {
    let h = log_spacing();
    GridConfig { origin: [-80.0 * h, -2.0 * PI], h, nx: 141, ny: 252, periodic_y2: true }
}

fn quadratic_grid() -> GridConfig {
    GridConfig { origin: [-6.0, -6.0], h: 0.05, nx: 241, ny: 241, periodic_y2: false }
}

fn config(family: MapFamily, grid: GridConfig, field: FigureField) -> ModelConfig {
    let n = match field {
        FigureField::State(n) => n,
        _ => [0, 0],
    };
    let output = match field {
        FigureField::Mass => OutputKind::Mass,
        FigureField::Potential => OutputKind::Potential,
        FigureField::State(_) => OutputKind::States,
    };
    ModelConfig {
        checks: vec![],
        outputs: vec![output],
        family,
        base: BasePotential::AnisotropicOscillator { omega1: 1.0, omega2: SQRT_2 },
        state: StateConfig { n: vec![n], solver: None },
        grid,
        window: None,
        settings: Settings::default(),
    }
}

pub fn preset(name: &str) -> Option<Preset> {
    let log = MapFamily::Log { alpha: 1.0, gamma: 1.0, delta: 0.0 };
    let quad = MapFamily::Quadratic { a: 0.125 };
    let (caption, family, grid, field) = match name {
        "fig1" => ("mass M, log map", log, log_grid(), FigureField::Mass),
        "fig2" => ("effective potential U, log map", log, log_grid(), FigureField::Potential),
        "fig3" => ("ground state, log map", log, log_grid(), FigureField::State([0, 0])),
        "fig4" => ("state (1,0), log map", log, log_grid(), FigureField::State([1, 0])),
        "fig5" => ("state (0,1), log map", log, log_grid(), FigureField::State([0, 1])),
        "fig6" => ("mass M, quadratic map", quad, quadratic_grid(), FigureField::Mass),
        "fig7" => ("effective potential U, quadratic map", quad, quadratic_grid(), FigureField::Potential),
        "fig8" => ("ground state, quadratic map", quad, quadratic_grid(), FigureField::State([0, 0])),
        "fig9" => ("first excited state (1,0), quadratic map", quad, quadratic_grid(), FigureField::State([1, 0])),
        "fig10" => ("state (0,1), quadratic map", quad, quadratic_grid(), FigureField::State([0, 1])),
        _ => return None,
    };
    let name = PRESETS.iter().find(|p| **p == name)?;
    Some(Preset { name, caption, field, config: config(family, grid, field) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_is_valid() {
        for name in PRESETS {
            let p = preset(name).unwrap();
            p.config.validate().unwrap();
            assert_eq!(p.name, name);
        }
        assert!(preset("fig11").is_none());
    }

    #[test]
    fn log_grid_has_an_exact_zero_column() {
        let g = log_grid().build().unwrap();
        assert_eq!(g.node(80, 0)[0], 0.0);
        assert!(g.is_periodic_y2());
        assert!((g.ny() as f64 * g.h() - 4.0 * PI).abs() < 1e-12);
    }
}

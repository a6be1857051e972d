use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use pdm_core::maps::MapFamily;
use pdm_core::pdmbuild::{PdmModel, TransformedState};
use pdm_core::verify::checks::{
    convergence_study, eigen_residual_with, hermiticity_decay_on_grid, metric_residual_points, normalization_check,
    NormalizationOptions,
};
use pdm_core::verify::{Field2D, Grid2D, PdmOperator, Region, VerificationReport};
use pdm_core::Execution;

use crate::config::{state_label, CheckName, ModelConfig, OutputKind};
use crate::heatmap::{write_png, Colormap};
use crate::presets::{preset, FigureField, Preset, PRESETS};
use crate::{write_atomic, CliError};

/// Closed forms of `M` and `U − V` in y-coordinates; `ρ = |y|`, `φ = atan2(y₂, y₁)`.
pub fn formulas(family: &MapFamily) -> (&'static str, &'static str) {
    match family {
        MapFamily::Log { .. } => ("M = γ²·exp(αy₁)", "U − V = −α²/(4M) = −(α²/(4γ²))·exp(−αy₁)"),
        MapFamily::Asinh { .. } => (
            "M = (A²/2)·(cosh λy₁ + cos λy₂)",
            "U − V = −λ²(cosh λy₁ − cos λy₂) / (2A²(cosh λy₁ + cos λy₂)²)",
        ),
        MapFamily::Power { .. } => ("M = β²·ρ^(2λ) / 4^(λ+1)", "U − V = −4^(λ+1)·λ² / (β²·ρ^(2λ+2))"),
        MapFamily::ExpRadial { .. } => ("M = β²/ρ²", "U − V = −1/β²"),
        MapFamily::Inverse { .. } => ("M = 4b²/ρ⁴", "U − V = −ρ²/b²"),
        MapFamily::Quadratic { .. } => ("M = 1/(8|a|ρ)", "U − V = −2|a|/ρ"),
        MapFamily::Logistic { .. } => (
            "M = 4 / (λ²ρ²(b²ρ² − 4bρ cos φ + 4))",
            "U − V = −λ²(b²ρ² − 2bρ cos φ + 1)",
        ),
    }
}

pub fn show(cfg: &ModelConfig) -> Result<String, CliError> {
    let model = cfg.model()?;
    let states = cfg.states(&model)?;
    let (mass, shift) = formulas(&cfg.family);
    let mut s = String::new();
    let _ = writeln!(s, "family:  {} ({})", cfg.family.name(), cfg.family.expression());
    let _ = writeln!(s, "coords:  y1 = 2 Re f, y2 = -2 Im f, rho = |y|, phi = atan2(y2, y1)");
    let _ = writeln!(s, "domain:  {}", model.domain().describe());
    let _ = writeln!(s, "sheets:  {}", cfg.family.sheet_count());
    let _ = writeln!(s, "mass:    {mass}");
    let _ = writeln!(s, "shift:   {shift}");
    let _ = writeln!(s, "base:    {}", cfg.base.describe());
    let _ = writeln!(s, "states:");
    for (n, ts) in cfg.state.n.iter().zip(&states) {
        let _ = writeln!(s, "  ({}, {})  E = {}  [{}]", n[0], n[1], ts.energy(), ts.base_state().label());
    }
    let g = cfg.grid.build()?;
    let _ = writeln!(s, "grid:    {}", g.describe());
    Ok(s)
}

fn field_of(model: &PdmModel, ts: Option<&TransformedState>, grid: &Grid2D, kind: FigureField) -> Result<Field2D, CliError> {
    let exec = Execution::default();
    Ok(match (kind, ts) {
        (FigureField::Mass, _) => Field2D::sample(grid, exec, |y| model.mass(y))?,
        (FigureField::Potential, _) => Field2D::sample(grid, exec, |y| model.potential(y))?,
        (FigureField::State(_), Some(ts)) => Field2D::sample(grid, exec, |y| ts.eval(y))?,
        (FigureField::State(_), None) => return Err(CliError::Config("state field requested without a state".into())),
    })
}

fn write_field(out: &Path, stem: &str, field: &Field2D, png: Option<Colormap>) -> Result<Vec<PathBuf>, CliError> {
    let csv = out.join(format!("{stem}.csv"));
    write_atomic(&csv, |w| Ok(field.write_csv(w)?))?;
    let mut written = vec![csv];
    if let Some(cmap) = png {
        let p = out.join(format!("{stem}.png"));
        write_png(&p, stem, field, cmap)?;
        written.push(p);
    }
    Ok(written)
}

/// Export grid: only singular points are masked, cut rays are kept.
fn export_grid(cfg: &ModelConfig, model: &PdmModel) -> Result<Grid2D, CliError> {
    Ok(cfg.grid.build()?.mask_model(model, cfg.mask_eps(cfg.grid.h), false, Execution::default()))
}

pub fn export(cfg: &ModelConfig, out: &Path, png: bool) -> Result<Vec<PathBuf>, CliError> {
    let model = cfg.model()?;
    let grid = export_grid(cfg, &model)?;
    let outputs = if cfg.outputs.is_empty() { vec![OutputKind::Mass, OutputKind::Potential, OutputKind::States] } else { cfg.outputs.clone() };
    let mut written = Vec::new();
    for kind in outputs {
        match kind {
            OutputKind::Mass => {
                let f = field_of(&model, None, &grid, FigureField::Mass)?;
                written.extend(write_field(out, "mass", &f, png.then_some(Colormap::Sequential))?);
            }
            OutputKind::Potential => {
                let f = field_of(&model, None, &grid, FigureField::Potential)?;
                written.extend(write_field(out, "potential", &f, png.then_some(Colormap::Sequential))?);
            }
            OutputKind::States => {
                for (n, ts) in cfg.state.n.iter().zip(cfg.states(&model)?) {
                    let f = field_of(&model, Some(&ts), &grid, FigureField::State(*n))?;
                    let cmap = if *n == [0, 0] { Colormap::Sequential } else { Colormap::Diverging };
                    written.extend(write_field(out, &state_label(*n), &f, png.then_some(cmap))?);
                }
            }
        }
    }
    Ok(written)
}

pub fn verify(cfg: &ModelConfig) -> Result<VerificationReport, CliError> {
    let exec = Execution::default();
    let model = cfg.model()?;
    let states = cfg.states(&model)?;
    let grid = cfg.residual_grid(&model, &cfg.grid)?;
    let window = cfg.window.clone().unwrap_or(Region::All);
    let set = &cfg.settings;
    let mut report = VerificationReport::new(model.describe(), grid.describe());
    let checks = if cfg.checks.is_empty() {
        vec![CheckName::EigenResidual, CheckName::Normalization, CheckName::Hermiticity, CheckName::Symmetry, CheckName::Metric]
    } else {
        cfg.checks.clone()
    };

    for check in checks {
        match check {
            CheckName::EigenResidual => {
                let es = set.eigen_residual;
                for (n, ts) in cfg.state.n.iter().zip(&states) {
                    let energy = ts.energy() + es.energy_offset;
                    let m = eigen_residual_with(&model, ts, energy, &grid, &window, exec)?;
                    let note = format!("E = {energy}, {} cells, max |HΨ−EΨ| = {:.3e}", m.cells, m.max_abs);
                    report.record(format!("eigen_residual {}", state_label(*n)), m.relative_l2, es.tolerance, note);
                }
            }
            CheckName::Convergence => {
                let cs = &set.convergence;
                for (n, ts) in cfg.state.n.iter().zip(&states) {
                    let table = convergence_study(&cs.h, |h| {
                        let g = cfg.residual_grid(&model, &cfg.grid.with_h(h)).map_err(|e| pdm_core::Error::Grid(e.to_string()))?;
                        eigen_residual_with(&model, ts, ts.energy(), &g, &window, exec).map(|m| m.relative_l2)
                    })?;
                    let worst = table.orders().iter().map(|o| (o - cs.expected_order).abs()).fold(0.0, f64::max);
                    let mut note = table
                        .rows
                        .iter()
                        .map(|r| format!("h={} r={:.3e} order={}", r.h, r.residual, r.order.map_or("-".into(), |o| format!("{o:.3}"))))
                        .collect::<Vec<_>>()
                        .join("; ");
                    for w in &table.warnings {
                        note.push_str(&format!("; warning: {w}"));
                    }
                    report.record(format!("convergence {}", state_label(*n)), worst, cs.tolerance, note);
                }
            }
            CheckName::Normalization => {
                let ns = set.normalization;
                let gc = ns.grid.unwrap_or(cfg.grid);
                let g = gc.build()?.mask_model(&model, 1e-3, false, exec);
                let opts = NormalizationOptions { blend_radius: ns.blend_radius, ..Default::default() };
                for (n, ts) in cfg.state.n.iter().zip(&states) {
                    let r = normalization_check(ts, &g, &opts, exec)?;
                    let note = format!("integral = {:.9}, edge fraction = {:.2e}, blend radius = {}", r.integral, r.tail_fraction, r.blend_radius);
                    report.record(format!("normalization {}", state_label(*n)), (r.integral - 1.0).abs(), ns.tolerance, note);
                }
            }
            CheckName::Hermiticity => {
                let hs = set.hermiticity;
                let g = match hs.grid {
                    Some(gc) => cfg.residual_grid(&model, &gc)?,
                    None => grid.clone(),
                };
                for (n, ts) in cfg.state.n.iter().zip(&states) {
                    let d = hermiticity_decay_on_grid(ts, &g);
                    let note = format!("boundary max {:.3e}, interior max {:.3e}, skipped {}", d.boundary_max, d.interior_max, d.skipped);
                    report.record(format!("hermiticity {}", state_label(*n)), d.ratio, hs.tolerance, note);
                }
            }
            CheckName::Symmetry => {
                let op = PdmOperator::assemble(&model, &grid, exec)?;
                let d = op.symmetry_defect(set.symmetry.seed, exec)?;
                report.record("symmetry", d, set.symmetry.tolerance, format!("{} valid cells", op.valid_count()));
            }
            CheckName::Metric => {
                let xs: Vec<_> = grid.unmasked_nodes().into_iter().filter_map(|y| cfg.family.x_of_y(y).ok()).collect();
                let r = metric_residual_points(&cfg.family, &xs)?;
                report.record("metric", r, set.metric.tolerance, format!("{} points", xs.len()));
            }
        }
    }
    Ok(report)
}

pub fn write_report(report: &VerificationReport, path: &Path) -> Result<(), CliError> {
    write_atomic(path, |w| {
        w.write_all(report.to_json().as_bytes())?;
        Ok(w.write_all(b"\n")?)
    })
}

pub fn figure_field(p: &Preset) -> Result<(Grid2D, Field2D), CliError> {
    let model = p.config.model()?;
    let grid = export_grid(&p.config, &model)?;
    let ts = match p.field {
        FigureField::State(_) => Some(p.config.states(&model)?.remove(0)),
        _ => None,
    };
    let field = field_of(&model, ts.as_ref(), &grid, p.field)?;
    Ok((grid, field))
}

pub fn figures(name: &str, out: &Path, png: bool) -> Result<Vec<PathBuf>, CliError> {
    let names: Vec<&str> = if name == "all" { PRESETS.to_vec() } else { vec![name] };
    let mut written = Vec::new();
    for n in names {
        let p = preset(n).ok_or_else(|| CliError::Config(format!("unknown preset `{n}`, expected one of {} or all", PRESETS.join(", "))))?;
        let (_, field) = figure_field(&p)?;
        written.extend(write_field(out, p.name, &field, png.then_some(p.colormap()))?);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_family_has_formulas() {
        for f in [
            MapFamily::Log { alpha: 1.0, gamma: 1.0, delta: 0.0 },
            MapFamily::Asinh { a: 1.0, lambda: 1.0 },
            MapFamily::Power { lambda: 1.0, beta: 1.0, alpha_shift: 0.0 },
            MapFamily::ExpRadial { gamma: 1.0, beta: 1.0 },
            MapFamily::Inverse { b: 1.0 },
            MapFamily::Quadratic { a: 1.0 },
            MapFamily::Logistic { a: 1.0, b: 1.0, lambda: 1.0 },
        ] {
            let (m, s) = formulas(&f);
            assert!(m.starts_with("M = ") && s.starts_with("U − V = "));
        }
    }
}

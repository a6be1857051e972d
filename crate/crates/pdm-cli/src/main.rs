use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pdm_cli::commands;
use pdm_cli::config::{ModelConfig, Overrides};
use pdm_cli::CliError;

#[derive(Parser)]
#[command(name = "pdm", version, about = "Position-dependent-mass models from conformal maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Model inspection
    Model {
        #[command(subcommand)]
        action: ModelAction,
    },
    /// Write M, U and state fields as CSV (and optionally PNG)
    Export {
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[command(flatten)]
        png: PngFlags,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Run the configured checks and write report.json; exit 1 if any check fails
    Verify {
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Export the data behind a figure preset (fig1..fig10, or all)
    Figures {
        preset: String,
        #[arg(long, default_value = "figures")]
        out: PathBuf,
        #[command(flatten)]
        png: PngFlags,
    },
}

#[derive(Subcommand)]
enum ModelAction {
    /// Print family, domain, closed forms and base energies
    Show {
        config: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
}

#[derive(Args)]
struct OverrideArgs {
    /// Grid spacing; the grid extent is kept
    #[arg(long)]
    grid_h: Option<f64>,
    /// Mask radius around singular points and cuts
    #[arg(long)]
    mask_eps: Option<f64>,
    /// Multiplies every tolerance
    #[arg(long)]
    tol_scale: Option<f64>,
}

#[derive(Args)]
struct PngFlags {
    /// Also write PNG heatmaps with a JSON sidecar
    #[arg(long, overrides_with = "no_png")]
    png: bool,
    #[arg(long = "no-png", overrides_with = "png")]
    no_png: bool,
}

impl PngFlags {
    fn enabled(&self, default: bool) -> bool {
        if self.png {
            true
        } else if self.no_png {
            false
        } else {
            default
        }
    }
}

fn load(path: &Path, o: &OverrideArgs) -> Result<ModelConfig, CliError> {
    let mut cfg = ModelConfig::load(path)?;
    cfg.apply(&Overrides { grid_h: o.grid_h, mask_eps: o.mask_eps, tol_scale: o.tol_scale })?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Model { action: ModelAction::Show { config, overrides } } => {
            print!("{}", commands::show(&load(&config, &overrides)?)?);
            Ok(0)
        }
        Command::Export { config, out, png, overrides } => {
            for p in commands::export(&load(&config, &overrides)?, &out, png.enabled(false))? {
                println!("{}", p.display());
            }
            Ok(0)
        }
        Command::Verify { config, out, overrides } => {
            let report = commands::verify(&load(&config, &overrides)?)?;
            let path = out.join("report.json");
            commands::write_report(&report, &path)?;
            for e in &report.entries {
                println!("{:<6} {:<32} {:.3e} <= {:.3e}  {}", if e.pass { "PASS" } else { "FAIL" }, e.check_name, e.measured, e.tolerance, e.notes);
            }
            println!("report: {}", path.display());
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::Figures { preset, out, png } => {
            for p in commands::figures(&preset, &out, png.enabled(true))? {
                println!("{}", p.display());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

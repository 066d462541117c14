mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::error;

use config::{CommandKind, RunConfig, Settings};

#[derive(Debug, Parser)]
#[command(name = "mirrorpress", version, about = "Radiation pressure and motional response of a partly transmitting mirror")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check reality, unitarity, symmetry, causality and transparency of a mirror model.
    Validate(Settings),
    /// Motional susceptibility χ[ω].
    Susceptibility(Settings),
    /// Force noise spectrum C_FF[ω] and spectral density ξ_FF[ω].
    Noise(Settings),
    /// Compare three evaluations of ξ_FF on a symmetric grid.
    Fdt(Settings),
    /// Negative-time energy and dispersion-relation residual of the response.
    Causality(Settings),
    /// Output covariance change for an oscillating mirror.
    Squeeze(Settings),
}

impl Command {
    fn split(self) -> (CommandKind, Settings) {
        match self {
            Command::Validate(s) => (CommandKind::Validate, s),
            Command::Susceptibility(s) => (CommandKind::Susceptibility, s),
            Command::Noise(s) => (CommandKind::Noise, s),
            Command::Fdt(s) => (CommandKind::Fdt, s),
            Command::Causality(s) => (CommandKind::Causality, s),
            Command::Squeeze(s) => (CommandKind::Squeeze, s),
        }
    }
}

const EXIT_PHYSICS: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NONCONVERGENCE: u8 = 3;

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<mirrorpress_core::Error>() {
        Some(e) if e.is_non_convergence() => EXIT_NONCONVERGENCE,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let (kind, settings) = Cli::parse().command.split();
    let cfg = match settings.with_config_file().and_then(|s| RunConfig::resolve(kind, s)) {
        Ok(cfg) => cfg,
        Err(e) => {
            error!("{e:#}");
            eprintln!("mirrorpress: {e:#}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let report = match commands::run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("mirrorpress {}: {e:#}", kind.name());
            return ExitCode::from(exit_code(&e));
        }
    };
    if let Err(e) = output::write(&cfg, &report) {
        eprintln!("mirrorpress: {e:#}");
        return ExitCode::from(EXIT_INPUT);
    }
    if report.passed {
        eprintln!("{}: pass", kind.name());
        ExitCode::SUCCESS
    } else {
        eprintln!("{}: FAIL {}", kind.name(), serde_json::Value::Object(report.summary.clone()));
        ExitCode::from(EXIT_PHYSICS)
    }
}

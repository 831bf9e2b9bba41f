//! `padic-qm <scenario> --config <file> --out <dir>`
//!
//! Exit codes: 0 on success, 2 when the configuration is invalid, 3 when a
//! numerical check (norm drift, density integrals) fails.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use padic_qm::experiments::{self, ScenarioConfig, ScenarioKind};
use padic_qm::Error;

#[derive(Parser)]
#[command(name = "padic-qm", version, about = "Scenario runner for quantum mechanics on R x Q_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Two-slit model: dark (p-adic) and bright (real) interference patterns.
    TwoSlit(Io),
    /// Continuous-time quantum walk driven by a Hermitian site matrix.
    Ctqw(Io),
    /// Apparatus scans over balls, with optional GRW comparison trajectories.
    Collapse(Io),
    /// Eigenvalues and multiplicities of the Vladimirov Hamiltonian on a window.
    Spectrum(Io),
}

#[derive(Args)]
struct Io {
    /// Scenario file of `key = value` lines.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; defaults to the `out` key of the config.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, io) = match cli.command {
        Command::TwoSlit(io) => (ScenarioKind::TwoSlit, io),
        Command::Ctqw(io) => (ScenarioKind::Ctqw, io),
        Command::Collapse(io) => (ScenarioKind::Collapse, io),
        Command::Spectrum(io) => (ScenarioKind::Spectrum, io),
    };
    match execute(kind, &io) {
        Ok(dir) => {
            eprintln!("{kind}: wrote {}", dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}

fn execute(kind: ScenarioKind, io: &Io) -> Result<PathBuf, Error> {
    let cfg = ScenarioConfig::from_file(&io.config)?;
    let dir = io
        .out
        .clone()
        .or_else(|| cfg.out.clone())
        .ok_or_else(|| Error::Config { field: "out".into(), reason: "pass --out or set `out`".into() })?;
    let output = experiments::run(kind, &cfg)?;
    output.write_to(&dir)?;
    Ok(dir)
}

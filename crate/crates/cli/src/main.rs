//! `hwave`: spectral evolution, decay measurement, inequality verification
//! and fixed-point experiments for the fractional damped wave equation on
//! the Heisenberg group. Every experiment reads a JSON config, writes CSV
//! and JSON artifacts into the output directory, and exits 0 when all
//! verdicts pass, 1 when any verdict fails, 2 on configuration errors.

mod config;
mod experiments;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hwave_core::error::Error;

#[derive(Parser)]
#[command(name = "hwave", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Calibrate the Plancherel constant and measure forward/inverse
    /// self-consistency on the Gaussian family.
    Roundtrip(RunArgs),
    /// Evolve linear Cauchy data and compare measured norms against the
    /// decay envelopes.
    SimulateLinear(RunArgs),
    /// Fit the polynomial decay rate of a measured or synthetic series.
    FitDecay(RunArgs),
    /// Run the inequality and integral-estimate oracle suite.
    Verify(RunArgs),
    /// Picard iteration for the semilinear problem with contraction
    /// monitoring and decay verification.
    SimulateNonlinear(RunArgs),
    /// Simultaneous Picard iteration for the weakly coupled system.
    SimulateCoupled(RunArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory for CSV/JSON artifacts.
    #[arg(long)]
    out: PathBuf,
    /// Seed for the randomized sweeps.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, runner): (&RunArgs, experiments::Runner) = match &cli.command {
        Command::Roundtrip(a) => (a, experiments::roundtrip),
        Command::SimulateLinear(a) => (a, experiments::simulate_linear),
        Command::FitDecay(a) => (a, experiments::fit_decay),
        Command::Verify(a) => (a, experiments::verify),
        Command::SimulateNonlinear(a) => (a, experiments::simulate_nonlinear),
        Command::SimulateCoupled(a) => (a, experiments::simulate_coupled),
    };
    let config = match config::parse_config(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = std::fs::create_dir_all(&args.out) {
        eprintln!("cannot create output directory: {e}");
        return ExitCode::from(2);
    }
    match runner(&config, &args.out, args.seed) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::Config(_) | Error::InvalidInput(_) | Error::Parse(_))) => {
            eprintln!("configuration error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("run failed: {e}");
            ExitCode::from(1)
        }
    }
}

//! `yb`: evaluate the shipped Yang–Baxter maps, run their verification
//! suites, evolve lattices and scan the leaf discriminant surface.
//!
//! Exit status: 0 pass, 1 verification failure, 2 configuration error,
//! 3 numerical degeneracy.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Abort, Exit};
use config::{Command, Overrides};

#[derive(Parser)]
#[command(name = "yb", version, about = "Parametric Yang-Baxter map verifier")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the property suites for a map and write a JSON report.
    Verify(RunArgs),
    /// Apply a map once to the point given in the config.
    Evaluate(RunArgs),
    /// Evolve a staircase and report invariant drift; writes a CSV trajectory.
    Lattice(RunArgs),
    /// Casimirs and discriminant residuals of leaf points, as CSV.
    #[command(name = "surface-scan")]
    SurfaceScan(RunArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    /// JSON configuration file.
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<Exit, Abort> {
    let (command, args) = match cli.command {
        Cmd::Verify(a) => (Command::Verify, a),
        Cmd::Evaluate(a) => (Command::Evaluate, a),
        Cmd::Lattice(a) => (Command::Lattice, a),
        Cmd::SurfaceScan(a) => (Command::SurfaceScan, a),
    };
    let over = Overrides {
        seed: args.seed,
        samples: args.samples,
        out: args.out,
    };
    let settings = config::load(&args.config)
        .and_then(|c| c.resolve(command, over))
        .map_err(Abort::config)?;
    match command {
        Command::Verify => commands::verify(&settings),
        Command::Evaluate => commands::evaluate(&settings),
        Command::Lattice => commands::lattice(&settings),
        Command::SurfaceScan => commands::surface_scan(&settings),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let exit = match run(Cli::parse()) {
        Ok(e) => e,
        Err(a) => {
            log::error!("{}", a.message);
            eprintln!("error: {}", a.message);
            a.exit
        }
    };
    ExitCode::from(exit as u8)
}

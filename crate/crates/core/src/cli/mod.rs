//! Command-line front end. Each command resolves its parameters from built-in
//! defaults, an optional JSON config (or a previous run manifest) and flags, in
//! that order, writes its output and a manifest beside it, and returns the
//! written paths.

pub mod audit;
pub mod config;
pub mod ellipse;
pub mod experiment;
pub mod fringes;
pub mod output;

use clap::{Parser, Subcommand};
use std::path::PathBuf;

pub use config::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "tiemzi",
    version,
    about = "Mach-Zehnder interferometry with TIE and standard atom sources"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fringe, distinguishability, sensitivity and purity curves (CSV).
    Fringes(fringes::FringesArgs),
    /// Sensitivity-distinguishability boundary for a list of κ (CSV).
    Ellipse(ellipse::EllipseArgs),
    /// Monte Carlo phase-shift estimation (JSON).
    Experiment(experiment::ExperimentArgs),
    /// Shift-or-block guessing game (JSON).
    Game(experiment::GameArgs),
    /// Randomized inequality verdict counts (JSON).
    Audit(audit::AuditArgs),
}

pub fn run(cli: &Cli) -> Result<Vec<PathBuf>, CliError> {
    match &cli.command {
        Command::Fringes(a) => fringes::run(a),
        Command::Ellipse(a) => ellipse::run(a),
        Command::Experiment(a) => experiment::run_experiment(a),
        Command::Game(a) => experiment::run_game_command(a),
        Command::Audit(a) => audit::run(a),
    }
}

/// Parses `args` and runs the command. Returns the process exit code: 0 on
/// success, 2 for configuration errors (including bad flags), 3 for I/O errors.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

//! Command-line surface for the detection toolkit.
//!
//! Subcommands: `detect` (full report on one state), `tables` (regenerate the
//! three golden reference tables), `figure1` (concurrence band CSV), and
//! `properties` (seeded validity suites).
//!
//! Exit codes: 0 = ran and the state was detected entangled (or the command
//! completed cleanly), 3 = ran but nothing was detected / inconclusive,
//! 1 = input error, 2 = numerical failure (including golden-value or property
//! violations).

mod detect_cmd;
mod figure_cmd;
mod properties_cmd;
mod tables_cmd;
mod textfmt;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use spa_detect::CoreError;

pub const EXIT_DETECTED: i32 = 0;
pub const EXIT_NOT_DETECTED: i32 = 3;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

/// A command failure destined for stderr, carrying its exit code.
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_NUMERICAL,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::NoConvergence { .. }
            | CoreError::SpaNotPositive { .. }
            | CoreError::SpaBadTrace { .. } => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "spa-detect",
    version,
    about = "Detect NPT entanglement of bipartite states via approximated partial transposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run all detection criteria on one state and print the evidence.
    Detect(detect_cmd::DetectArgs),
    /// Regenerate the three reference tables (markdown, CSV, or JSON).
    Tables(tables_cmd::TablesArgs),
    /// Emit the concurrence band (alpha, lower, upper) of the qutrit-qubit
    /// family as CSV.
    Figure1(figure_cmd::FigureArgs),
    /// Run the seeded randomized validity suites.
    Properties(properties_cmd::PropertiesArgs),
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Detect(args) => detect_cmd::run(args),
        Command::Tables(args) => tables_cmd::run(args),
        Command::Figure1(args) => figure_cmd::run(args),
        Command::Properties(args) => properties_cmd::run(args),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

//! `wtangle`: entanglement measures and monogamy tangles of symmetric
//! W-class multi-qubit states, with a built-in brute-force verification suite.
//!
//! Exit codes: 0 on success, 1 when verification fails or a runtime error
//! occurs, 2 on usage errors.

mod angle;
mod commands;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use angle::parse_angle;
use commands::{run_analyze, run_classify, run_sweep, run_verify, CmdError, SweepSpec};

#[derive(Parser)]
#[command(
    name = "wtangle",
    version,
    about = "Entanglement measures and monogamy tangles for symmetric W-class states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Quantities a sweep can emit, one CSV column each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Quantity {
    PairwiseConcurrence,
    PairwiseNegativity,
    OneVsRestNegativity,
    ConcurrenceTangle,
    NegativityTangle,
}

impl Quantity {
    pub fn column(&self) -> &'static str {
        match self {
            Quantity::PairwiseConcurrence => "pairwise_concurrence",
            Quantity::PairwiseNegativity => "pairwise_negativity",
            Quantity::OneVsRestNegativity => "one_vs_rest_negativity",
            Quantity::ConcurrenceTangle => "concurrence_tangle",
            Quantity::NegativityTangle => "negativity_tangle",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one W-class state: all measures, both tangles, and the
    /// closed-form residuals, emitted as JSON.
    Analyze {
        /// Qubit count (at least 3).
        #[arg(long)]
        n: usize,
        /// Angle in radians, or a pi token like `pi`, `pi/2`, `3pi/2`.
        #[arg(long, value_parser = parse_angle)]
        theta: f64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sweep a theta grid over one or more qubit counts and emit CSV.
    Sweep {
        /// Comma-separated qubit counts, e.g. `3,4,5,6`.
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        /// Grid start angle (radians or pi token).
        #[arg(long, value_parser = parse_angle, default_value = "0")]
        theta_start: f64,
        /// Grid end angle (radians or pi token).
        #[arg(long, value_parser = parse_angle, default_value = "2pi")]
        theta_end: f64,
        /// Number of grid points including both end points.
        #[arg(long, default_value_t = 201)]
        theta_steps: usize,
        /// Comma-separated quantity columns.
        #[arg(long, value_delimiter = ',', required = true)]
        quantities: Vec<Quantity>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the brute-force verification suite up to a qubit count and emit a
    /// JSON report; exits 1 if any check fails.
    Verify {
        /// Largest qubit count to verify (3..=14).
        #[arg(long)]
        max_n: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the SLOCC degeneracy configurations for n qubits made of r
    /// distinct spinors.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
}

fn run(cli: Cli) -> Result<bool, CmdError> {
    match cli.command {
        Command::Analyze { n, theta, output } => {
            run_analyze(n, theta, output)?;
            Ok(true)
        }
        Command::Sweep {
            n_list,
            theta_start,
            theta_end,
            theta_steps,
            quantities,
            output,
        } => {
            let spec = SweepSpec {
                n_list,
                theta_start,
                theta_end,
                theta_steps,
                quantities,
            };
            run_sweep(&spec, output)?;
            Ok(true)
        }
        Command::Verify { max_n, output } => run_verify(max_n, output),
        Command::Classify { n, r } => {
            run_classify(n, r)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

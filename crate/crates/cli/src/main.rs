//! `lapnet`: deployment planning for aerial LTE base stations.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 infeasible result,
//! 3 I/O error. Nothing is written to `--out` unless the command succeeds.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "lapnet",
    version,
    about = "Aerial base-station deployment planner"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Altitude that maximizes the mean-loss coverage radius.
    PlanAltitude(PlanAltitudeArgs),
    /// Coverage radius at a fixed altitude.
    Coverage(CoverageArgs),
    /// Scan cluster counts for the lowest uplink energy.
    ClusterOptimize(ClusterArgs),
    /// Direct and one-hop relay coverage of a scenario's terminals.
    Relay(RelayArgs),
    /// Seeded Monte-Carlo evaluation of a scenario.
    Simulate(SimulateArgs),
    /// Append occupancy measurements to a REM store.
    RemIngest(RemIngestArgs),
    /// Least-occupied-first channel list from a REM store.
    RemChannels(RemChannelsArgs),
}

/// Radio/environment source: a scenario file, explicit flags, or both
/// (flags override the scenario).
#[derive(Debug, Args)]
pub struct LinkArgs {
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Maximum allowed path loss, dB.
    #[arg(long)]
    pub plmax: Option<f64>,
    /// Carrier frequency, Hz.
    #[arg(long)]
    pub freq: Option<f64>,
    /// Environment preset name or JSON file.
    #[arg(long)]
    pub env: Option<String>,
}

#[derive(Debug, Args)]
pub struct PlanAltitudeArgs {
    #[command(flatten)]
    pub link: LinkArgs,
    #[arg(long)]
    pub hmin: f64,
    #[arg(long)]
    pub hmax: f64,
    #[arg(long, default_value_t = lapnet_core::planner::DEFAULT_TOL_M)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoverageArgs {
    #[command(flatten)]
    pub link: LinkArgs,
    /// Platform altitude, m. Defaults to the scenario's.
    #[arg(long)]
    pub altitude: Option<f64>,
    #[arg(long, default_value_t = lapnet_core::planner::DEFAULT_TOL_M)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub kmin: usize,
    /// Defaults to the number of terminals.
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RelayArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    /// Largest terrestrial hop loss a relay can absorb, dB.
    #[arg(long)]
    pub budget: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExecutionArg {
    Sequential,
    Parallel,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub runs: usize,
    #[arg(long)]
    pub seed: u64,
    /// Per-terminal report CSV of the first run.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Monte-Carlo summary JSON (standard output when omitted).
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ExecutionArg::Parallel)]
    pub execution: ExecutionArg,
}

#[derive(Debug, Args)]
pub struct RemIngestArgs {
    /// Store CSV; created when missing.
    #[arg(long)]
    pub store: PathBuf,
    /// Measurement CSV files to ingest.
    #[arg(long, required = true, num_args = 1..)]
    pub input: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RemChannelsArgs {
    #[arg(long)]
    pub store: PathBuf,
    /// Cells as `x:y` pairs separated by commas; all cells when omitted.
    #[arg(long)]
    pub cells: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

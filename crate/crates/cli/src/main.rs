//! `ergodual`: Folner ratios, fusion rules, Wiener-type averages and Cesàro
//! operator averages from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "ergodual", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Folner ratios |∂_S(F_n)|_w / |F_n|_w along a schedule.
    Folner(FolnerArgs),
    /// Decompose a tensor product of two irreps.
    Fusion(FusionArgs),
    /// Atom, energy or character averages of a measure.
    Wiener(WienerArgs),
    /// Cesàro operator averages of a finite-dimensional representation.
    Ergodic(ErgodicArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ScheduleArgs {
    /// Named schedule (default, boxes, spins, full) or a JSON schedule file.
    #[arg(long, default_value = "default")]
    pub schedule: String,
    /// Number of steps for named schedules.
    #[arg(long, default_value_t = 30)]
    pub steps: usize,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a whitespace-separated data file for gnuplot.
    #[arg(long)]
    pub gnuplot: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct FolnerArgs {
    /// Ring id: Z, Z^d:<d>, SU2, finite:<name>, dualgroup:Z^d:<d>.
    #[arg(long)]
    pub ring: String,
    /// Probe set S as `;`-separated label literals; defaults to the ring's generators.
    #[arg(long = "S")]
    pub probe: Option<String>,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct FusionArgs {
    #[arg(long)]
    pub ring: String,
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Atom,
    Energy,
    Char,
}

#[derive(Args, Debug, Clone)]
pub struct WienerArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Measure spec (JSON).
    #[arg(long)]
    pub measure: PathBuf,
    /// Element literal y for `--kind atom`.
    #[arg(long)]
    pub at: Option<String>,
    /// Optional ring id; must agree with the measure's group.
    #[arg(long)]
    pub ring: Option<String>,
    /// Attach the ground-truth target from the stored atoms.
    #[arg(long)]
    pub target: bool,
    /// Haar samples used for the density positivity warning.
    #[arg(long, default_value_t = 10_000)]
    pub positivity_samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance of the continuity verdict printed for energy series.
    #[arg(long, env = "ERGODUAL_TOL", default_value_t = 1e-2)]
    pub tol: f64,
    /// Tail length of the continuity verdict.
    #[arg(long, default_value_t = 5)]
    pub tail: usize,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepKind {
    Point,
    Group,
    Gns,
}

#[derive(Args, Debug, Clone)]
pub struct ErgodicArgs {
    #[arg(long, value_enum)]
    pub rep: RepKind,
    /// Representation spec (JSON).
    #[arg(long)]
    pub spec: PathBuf,
    /// Pass tolerance for the final distance and commutant residue.
    #[arg(long, env = "ERGODUAL_TOL", default_value_t = 1e-2)]
    pub tol: f64,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Folner(a) => commands::folner(a),
        Command::Fusion(a) => commands::fusion(a),
        Command::Wiener(a) => commands::wiener(a),
        Command::Ergodic(a) => commands::ergodic(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 1,
                CliError::Validation(_) => 2,
                CliError::Numeric(_) => 3,
            })
        }
    }
}

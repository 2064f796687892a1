use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mlco::ir::LevelName;
use mlco::passes::Strategy;
use mlco::pde::{StepOrder, WingStyle};

mod commands;

/// Multilevel optimizer for Trotterized wave-equation simulation circuits.
#[derive(Debug, Parser)]
#[command(name = "mlco", version)]
struct Cli {
    /// Pass configuration file (JSON).
    #[arg(long, global = true, env = "MLCO_CONFIG")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the source circuit for a number of Trotter steps.
    Build(BuildArgs),
    /// Simplify and lower a circuit file.
    Optimize(OptimizeArgs),
    /// Compare two circuits, or one circuit against the evolution it approximates.
    Verify(VerifyArgs),
    /// Print the entangling-gate census of a circuit file.
    Count(CountArgs),
    /// Write a low-level circuit as OpenQASM 3.
    Export(ExportArgs),
    /// Gate counts of both flows across sizes.
    Sweep(SweepArgs),
    /// Stage-by-stage census at n = 6 checked against the published counts.
    Table(TableArgs),
    /// List the registered rewrite rules.
    Rules,
}

#[derive(Debug, Clone, Args)]
struct PhysicsArgs {
    #[arg(long, default_value_t = 0.2)]
    tau: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1.0)]
    l: f64,
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// Discretization qubits n (at least 3).
    #[arg(long)]
    qubits: usize,
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(long, default_value = "stair")]
    wing: WingStyle,
    /// Block order of each step: inc, dec or alt. Defaults to alt for two
    /// or more steps.
    #[arg(long)]
    order: Option<StepOrder>,
    #[command(flatten)]
    physics: PhysicsArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Mlco,
    Deto,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Mlco => Strategy::Mlco,
            StrategyArg::Deto => Strategy::Deto,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LevelArg {
    Higs,
    Migs,
    Logs,
}

impl From<LevelArg> for LevelName {
    fn from(l: LevelArg) -> LevelName {
        match l {
            LevelArg::Higs => LevelName::HiGS,
            LevelArg::Migs => LevelName::MiGS,
            LevelArg::Logs => LevelName::LoGS,
        }
    }
}

#[derive(Debug, Clone, Args)]
struct TrialArgs {
    /// Random input states per comparison.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    #[arg(long, value_enum, default_value = "mlco")]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "logs")]
    to: LevelArg,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Write per-stage censuses here (JSON).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Check the output against the input. On by default up to 8 data qubits.
    #[arg(long, conflicts_with = "no_verify")]
    verify: bool,
    #[arg(long)]
    no_verify: bool,
    #[command(flatten)]
    trials: TrialArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Against {
    ProductFormula,
    ExactEvolution,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long, required_unless_present = "against", conflicts_with = "against")]
    b: Option<PathBuf>,
    #[arg(long, value_enum)]
    against: Option<Against>,
    /// Trotter steps encoded in `a` (with --against).
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[command(flatten)]
    physics: PhysicsArgs,
    #[command(flatten)]
    trials: TrialArgs,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Print the census as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "6,8,12,16,20")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    steps: usize,
    #[arg(long, default_value = "stair")]
    wing: WingStyle,
    /// Write the rows as CSV.
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, default_value = "stair")]
    wing: WingStyle,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

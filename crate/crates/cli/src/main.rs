use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod plot;

use qgan_core::harness::{GradMode, InitKind};
use qgan_core::initfit::AngleFormula;
use qgan_core::targets::TailMode;

#[derive(Parser, Debug)]
#[command(name = "qgan", version, about = "Quantum GAN distribution loading with fitted initial distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fit the init angles and readout permutation for a target.
    FitInit {
        #[command(flatten)]
        target: TargetArgs,
        /// Angle formula: sqrt (2 acos sqrt r) or literal (2 acos r).
        #[arg(long, value_enum)]
        angle_formula: Option<FormulaArg>,
        /// Write init_spec.json into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the discretized target distribution.
    Discretize {
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Train the generator; flags override the config file.
    Train(TrainArgs),
    /// Run the benchmark sweep over 3 targets x 3 inits x k = 1..3.
    Reproduce {
        /// desk: 5 runs x 500 epochs, exact gradients. full: 10 runs x 2000 epochs, shot-based gradients.
        #[arg(long, value_enum, default_value = "desk")]
        scale: Scale,
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        epochs: Option<usize>,
        /// Base seed; run i uses seed + i.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        tail_mode: Option<TailArg>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value = "qgan-reproduce")]
        out: PathBuf,
    },
}

#[derive(Args, Debug, Clone, Default)]
struct TargetArgs {
    /// Target family.
    #[arg(long, value_enum)]
    target: Option<TargetArg>,
    /// Log-normal location (default 1).
    #[arg(long)]
    mu: Option<f64>,
    /// Log-normal scale (default 1).
    #[arg(long)]
    sigma: Option<f64>,
    /// Triangular lower limit (default 0).
    #[arg(long)]
    l: Option<f64>,
    /// Triangular mode (default 2).
    #[arg(long)]
    m: Option<f64>,
    /// Triangular upper limit (default 7).
    #[arg(long)]
    u: Option<f64>,
    /// Bimodal first component mean (default 0.5).
    #[arg(long)]
    mu1: Option<f64>,
    /// Bimodal first component std (default 1).
    #[arg(long)]
    sigma1: Option<f64>,
    /// Bimodal second component mean (default 3.5).
    #[arg(long)]
    mu2: Option<f64>,
    /// Bimodal second component std (default 0.5).
    #[arg(long)]
    sigma2: Option<f64>,
    /// Probabilities for --target custom: JSON array or whitespace/comma separated.
    #[arg(long)]
    pmf_file: Option<PathBuf>,
    /// Number of qubits (default 3).
    #[arg(long)]
    qubits: Option<usize>,
    /// Tail handling outside the label grid (default truncate).
    #[arg(long, value_enum)]
    tail_mode: Option<TailArg>,
}

#[derive(Args, Debug)]
struct TrainArgs {
    /// JSON config: training settings plus optional "out" and "plots".
    #[arg(long)]
    config: Option<PathBuf>,
    /// Replay the run recorded in a JSON sidecar.
    #[arg(long, conflicts_with = "config")]
    from_sidecar: Option<PathBuf>,
    #[command(flatten)]
    target: TargetArgs,
    /// Ansatz repetitions.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum)]
    init: Option<InitArg>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    runs: Option<usize>,
    /// Base seed; run i uses seed + i.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    grad_mode: Option<GradArg>,
    #[arg(long, value_enum)]
    angle_formula: Option<FormulaArg>,
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory (default qgan-out).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write SVG plots for every run.
    #[arg(long)]
    plots: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TargetArg {
    Lognormal,
    Triangular,
    Bimodal,
    Uniform,
    Custom,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TailArg {
    Clip,
    Truncate,
}

impl From<TailArg> for TailMode {
    fn from(t: TailArg) -> Self {
        match t {
            TailArg::Clip => TailMode::Clip,
            TailArg::Truncate => TailMode::Truncate,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormulaArg {
    Sqrt,
    Literal,
}

impl From<FormulaArg> for AngleFormula {
    fn from(f: FormulaArg) -> Self {
        match f {
            FormulaArg::Sqrt => AngleFormula::Sqrt,
            FormulaArg::Literal => AngleFormula::Literal,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum InitArg {
    Our,
    Uniform,
    Normal,
}

impl From<InitArg> for InitKind {
    fn from(i: InitArg) -> Self {
        match i {
            InitArg::Our => InitKind::OurMethod,
            InitArg::Uniform => InitKind::Uniform,
            InitArg::Normal => InitKind::Normal,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GradArg {
    Shots,
    Exact,
}

impl From<GradArg> for GradMode {
    fn from(g: GradArg) -> Self {
        match g {
            GradArg::Shots => GradMode::Shots,
            GradArg::Exact => GradMode::Exact,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Scale {
    Desk,
    Full,
}

/// Bad flag combinations found after parsing; reported like clap's own
/// usage errors.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::FitInit { target, angle_formula, out } => {
            commands::fit_init(&target, angle_formula.map_or(AngleFormula::Sqrt, Into::into), out.as_deref())
        }
        Command::Discretize { target } => commands::discretize(&target),
        Command::Train(args) => commands::train(&args),
        Command::Reproduce {
            scale,
            runs,
            epochs,
            seed,
            tail_mode,
            workers,
            out,
        } => commands::reproduce(scale, runs, epochs, seed, tail_mode.map(Into::into), workers, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

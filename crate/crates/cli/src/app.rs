//! Argument parsing and command dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use phaseprobe_core::dsl::{parse_circuit, ParseError};
use phaseprobe_core::grover::{grover_search_with, optimal_iterations, Diffusion};
use phaseprobe_core::interpretation::DEFAULT_BRANCH_LIMIT;
use phaseprobe_core::state::total_variation;
use phaseprobe_core::{BasisIndex, Builtin, Circuit, Engine, InterpretationModel};

use crate::ensemble::{self, EnsembleError};
use crate::report::{Format, GroverReport, Mode, ModelResult, RunReport};

#[derive(Debug, Parser)]
#[command(
    name = "phaseprobe",
    version,
    about = "Compare unitary and collapse predictions for conditional-phase-flip circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a `.qc` circuit file or a builtin circuit.
    Run(RunArgs),
    /// Run a builtin circuit (same as `run --builtin NAME`).
    Demo {
        /// figure1, figure2 or figure3
        name: String,
        #[command(flatten)]
        options: RunOptions,
    },
    /// Grover search for one marked basis state.
    Grover(GroverArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Circuit file in the `.qc` language.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    file: Option<PathBuf>,
    /// Builtin circuit: figure1, figure2 or figure3.
    #[arg(long)]
    builtin: Option<String>,
    #[command(flatten)]
    options: RunOptions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModelChoice {
    Unitary,
    Collapse,
    Both,
}

#[derive(Debug, Args)]
struct RunOptions {
    #[arg(long, value_enum, default_value_t = ModelChoice::Both)]
    model: ModelChoice,
    /// Exact distributions (the default when --trials is 0).
    #[arg(long)]
    exact: bool,
    /// Monte Carlo trials; 0 selects exact evaluation.
    #[arg(long, default_value_t = 0)]
    trials: u64,
    /// Master seed, required with --trials.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for ensembles (default: all cores). Output does not
    /// depend on this.
    #[arg(long)]
    threads: Option<usize>,
    /// Cap on collapse branches per checkpoint in exact mode.
    #[arg(long, default_value_t = DEFAULT_BRANCH_LIMIT)]
    branch_limit: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DiffusionChoice {
    Reflection,
    Hadamard,
}

#[derive(Debug, Args)]
struct GroverArgs {
    #[arg(long)]
    qubits: u32,
    /// Marked basis state as a bitstring, e.g. `101`.
    #[arg(long)]
    marked: String,
    /// Defaults to the optimal count for the register width.
    #[arg(long)]
    iterations: Option<u32>,
    #[arg(long, value_enum, default_value_t = DiffusionChoice::Reflection)]
    diffusion: DiffusionChoice,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    File(PathBuf),
    Builtin(Builtin),
}

/// Validated settings for the `run` and `demo` commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: Source,
    pub models: Vec<InterpretationModel>,
    /// 0 means exact evaluation.
    pub trials: u64,
    pub seed: Option<u64>,
    pub format: Format,
    pub threads: Option<usize>,
    pub branch_limit: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{}:{}: {}", .error.position.line, .error.position.column, .error.message)]
    Parse { path: String, error: ParseError },
    #[error(transparent)]
    Run(#[from] phaseprobe_core::Error),
}

impl CliError {
    /// 1 for unreadable or invalid circuits and failed runs, 2 for usage errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<EnsembleError> for CliError {
    fn from(e: EnsembleError) -> Self {
        match e {
            EnsembleError::Core(e) => CliError::Run(e),
            EnsembleError::Pool(e) => CliError::Usage(e.to_string()),
        }
    }
}

/// What a CLI invocation printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl RunConfig {
    fn from_options(source: Source, o: RunOptions) -> Result<Self, CliError> {
        if o.exact && o.trials > 0 {
            return Err(CliError::Usage(
                "--exact cannot be combined with --trials > 0".into(),
            ));
        }
        if o.trials > 0 && o.seed.is_none() {
            return Err(CliError::Usage("--seed is required with --trials".into()));
        }
        if o.threads == Some(0) {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        let models = match o.model {
            ModelChoice::Unitary => vec![InterpretationModel::Unitary],
            ModelChoice::Collapse => vec![InterpretationModel::Collapse],
            ModelChoice::Both => vec![InterpretationModel::Unitary, InterpretationModel::Collapse],
        };
        Ok(RunConfig {
            source,
            models,
            trials: o.trials,
            seed: o.seed,
            format: o.format,
            threads: o.threads,
            branch_limit: o.branch_limit,
        })
    }
}

fn builtin(name: &str) -> Result<Builtin, CliError> {
    name.parse()
        .map_err(|e: phaseprobe_core::Error| CliError::Usage(e.to_string()))
}

fn load(source: &Source) -> Result<(String, Circuit), CliError> {
    match source {
        Source::Builtin(b) => Ok((format!("builtin:{}", b.name()), b.circuit())),
        Source::File(path) => {
            let shown = path.display().to_string();
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
                path: shown.clone(),
                source,
            })?;
            let circuit = parse_circuit(&text).map_err(|error| CliError::Parse {
                path: shown.clone(),
                error,
            })?;
            Ok((shown, circuit))
        }
    }
}

/// Evaluates a run configuration into a report.
pub fn execute_run(config: &RunConfig) -> Result<RunReport, CliError> {
    let (source, circuit) = load(&config.source)?;
    let mut results = Vec::with_capacity(config.models.len());
    for &model in &config.models {
        let engine = Engine::new(model).with_branch_limit(config.branch_limit);
        let result = if config.trials == 0 {
            ModelResult {
                model,
                counts: None,
                frequencies: engine.run_exact(&circuit)?,
                trials: 0,
            }
        } else {
            let seed = config.seed.expect("seed checked with trials");
            let dist =
                ensemble::run_parallel(&engine, &circuit, config.trials, seed, config.threads)?;
            ModelResult {
                model,
                frequencies: dist.frequencies(),
                counts: Some(dist.counts().to_vec()),
                trials: dist.trials(),
            }
        };
        results.push(result);
    }
    let total_variation = match results.as_slice() {
        [a, b] => Some(total_variation(&a.frequencies, &b.frequencies)?),
        _ => None,
    };
    Ok(RunReport {
        source,
        qubits: circuit.qubits(),
        mode: if config.trials == 0 {
            Mode::Exact
        } else {
            Mode::MonteCarlo
        },
        seed: if config.trials == 0 {
            None
        } else {
            config.seed
        },
        results,
        total_variation,
    })
}

fn execute_grover(args: &GroverArgs) -> Result<String, CliError> {
    let marked = BasisIndex::from_bitstring_for(&args.marked, args.qubits)
        .map_err(|e| CliError::Usage(format!("--marked: {e}")))?;
    let iterations = args
        .iterations
        .unwrap_or_else(|| optimal_iterations(args.qubits));
    let diffusion = match args.diffusion {
        DiffusionChoice::Reflection => Diffusion::Reflection,
        DiffusionChoice::Hadamard => Diffusion::Hadamard,
    };
    let run = grover_search_with(args.qubits, marked, iterations, diffusion)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let report = GroverReport {
        qubits: run.qubits,
        marked: run.marked,
        iterations: run.iterations,
        diffusion: match diffusion {
            Diffusion::Reflection => "reflection",
            Diffusion::Hadamard => "hadamard",
        },
        success_probability: run.success_probability,
        probabilities: run.final_state.probabilities(),
    };
    Ok(report.render(args.format))
}

fn dispatch(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Run(args) => {
            let source = match (args.file, args.builtin) {
                (_, Some(name)) => Source::Builtin(builtin(&name)?),
                (Some(path), None) => Source::File(path),
                (None, None) => {
                    return Err(CliError::Usage("give a circuit file or --builtin".into()));
                }
            };
            let config = RunConfig::from_options(source, args.options)?;
            Ok(execute_run(&config)?.render(config.format))
        }
        Command::Demo { name, options } => {
            let config = RunConfig::from_options(Source::Builtin(builtin(&name)?), options)?;
            Ok(execute_run(&config)?.render(config.format))
        }
        Command::Grover(args) => execute_grover(&args),
    }
}

/// Runs the CLI on `args` (including the program name) without touching the
/// process's stdout, stderr or exit status.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                }
            };
        }
    };
    match dispatch(cli) {
        Ok(stdout) => Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use minnaert::bubble::DistanceConvention;
use minnaert_cli::config::{parse_config, Experiment, ExperimentConfig};
use minnaert_cli::error::CliError;
use minnaert_cli::experiments::{run, run_formula3d, run_verify_expansions};
use minnaert_cli::write_outputs;

/// Worker count for sweeps; defaults to the available parallelism.
const THREADS_VAR: &str = "MINNAERT_THREADS";

#[derive(Parser)]
#[command(name = "minnaert", version, about = "Bubble resonance experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum)]
    distance_convention: Option<Convention>,
    #[arg(long)]
    no_svg: bool,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Convention {
    Gap,
    Center,
}

#[derive(Subcommand)]
enum Command {
    /// Numerical and formula resonances for a list of contrasts.
    Table1(RunArgs),
    /// Two-bubble normal modes for a list of distances.
    Table2(RunArgs),
    /// Resonance objective of a single bubble over a complex frequency grid.
    SpectrumMap(RunArgs),
    /// Two-bubble resonance objective over distances and frequencies.
    SweepDistance(RunArgs),
    /// Monopole scattering coefficient over real frequencies.
    SweepScatter(RunArgs),
    /// Three-dimensional resonance formula.
    Formula3d {
        #[arg(long)]
        cap: f64,
        #[arg(long)]
        vol: f64,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        v: f64,
        #[arg(long)]
        delta: f64,
    },
    /// Remainders of the small-wavenumber operator expansions.
    VerifyExpansions {
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(args: &RunArgs, experiment: Experiment) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| CliError::io(&args.config, e))?;
    let mut config = parse_config(&text)?;
    if config.experiment != experiment {
        return Err(CliError::Validation {
            key: "experiment".into(),
            reason: format!("config is for {}, command runs {}", config.experiment.name(), experiment.name()),
        });
    }
    if let Some(n) = args.n {
        config.n = n;
    }
    if let Some(c) = args.distance_convention {
        config.distance_convention = match c {
            Convention::Gap => DistanceConvention::Gap,
            Convention::Center => DistanceConvention::Center,
        };
    }
    if let Some(out) = &args.out {
        config.output_dir = out.clone();
    }
    config.validate()?;
    Ok(config)
}

fn run_experiment(args: &RunArgs, experiment: Experiment) -> Result<(), CliError> {
    let config = load(args, experiment)?;
    let table = run(&config)?;
    for path in write_outputs(&table, &config.output_dir, !args.no_svg)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn init_threads() -> Result<(), CliError> {
    let threads = match std::env::var(THREADS_VAR) {
        Ok(v) => Some(v.trim().parse::<usize>().ok().filter(|n| *n > 0).ok_or_else(|| CliError::Validation {
            key: THREADS_VAR.into(),
            reason: format!("expected a positive integer, got {v:?}"),
        })?),
        Err(_) => None,
    };
    minnaert::exec::init_workers(threads);
    Ok(())
}

fn main_inner(cli: Cli) -> Result<(), CliError> {
    init_threads()?;
    match cli.command {
        Command::Table1(a) => run_experiment(&a, Experiment::Table1),
        Command::Table2(a) => run_experiment(&a, Experiment::Table2),
        Command::SpectrumMap(a) => run_experiment(&a, Experiment::SpectrumMap),
        Command::SweepDistance(a) => run_experiment(&a, Experiment::DistanceSweep),
        Command::SweepScatter(a) => run_experiment(&a, Experiment::ScatterSweep),
        Command::Formula3d { cap, vol, tau, v, delta } => {
            print!("{}", run_formula3d(cap, vol, tau, v, delta)?.to_csv());
            Ok(())
        }
        Command::VerifyExpansions { n, out } => {
            let table = run_verify_expansions(n)?;
            match out {
                Some(dir) => {
                    for path in write_outputs(&table, &dir, false)? {
                        println!("{}", path.display());
                    }
                }
                None => print!("{}", table.to_csv()),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match main_inner(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

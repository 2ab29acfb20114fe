//! `pollen` — seeded optimizer runs, persisted experiments, paired
//! comparisons, and the full replication grid from the command line.
//!
//! Every subcommand accepts `--config <file.toml>`; explicit flags override
//! file values, and file values override built-in defaults.

mod config;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::config::FileConfig;
use pollen_core::benchmarks::{registry_lookup, FUNCTION_NAMES};
use pollen_core::fpa::{Algorithm, SwitchProbabilitySchedule};
use pollen_core::harness::{
    compare_algorithms, emit_table, format_scientific_3sig, run_experiment, run_replication,
    single_run, statistics_row, write_comparison_record, BetterMean, ExperimentConfig,
    ReplicationProtocol, RunStatistics, DEFAULT_RUN_COUNT, TABLE_HEADER,
};

#[derive(Parser)]
#[command(
    name = "pollen",
    version,
    about = "Flower-pollination optimizer with fixed or dimension-keyed switch probabilities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute one seeded run and print the best solution found
    Run(RunArgs),
    /// Execute a multi-run experiment and write its artifact directory
    Experiment(ExperimentArgs),
    /// Rebuild the full grid: six functions, three dimensions, both algorithms
    Replicate(ReplicateArgs),
    /// Run both algorithms on one problem and print the paired table
    Compare(CompareArgs),
    /// Print the registered objective functions
    ListFunctions,
}

/// Flags shared by every subcommand that executes the optimizer.
#[derive(Args)]
struct EngineFlags {
    /// Fixed switch probability in [0, 1] (in compare, tunes the original side)
    #[arg(long)]
    p: Option<f64>,

    /// Dimension-keyed schedule, e.g. "10:0.5,30:0.2,50:0.1" (in compare, tunes the proposed side)
    #[arg(long, conflicts_with = "p")]
    schedule: Option<String>,

    /// Swarm size (default 50)
    #[arg(long)]
    pop: Option<usize>,

    /// Generations per run (default keyed to the dimension: 1000/1500/2500 at d = 10/30/50)
    #[arg(long)]
    generations: Option<usize>,

    /// Master seed (default 42)
    #[arg(long)]
    seed: Option<u64>,

    /// Tail exponent of the heavy-tailed step sampler, in (0, 2] (default 1.5)
    #[arg(long)]
    lambda: Option<f64>,

    /// Global step scale (default 1.0)
    #[arg(long)]
    gamma: Option<f64>,

    /// TOML config file (schema_version = 1)
    #[arg(long)]
    config: Option<PathBuf>,

    /// Step away from the best position instead of toward it
    #[arg(long = "eq1-sign")]
    eq1_sign: bool,

    /// Use the index-weighted quartic reading of the himmelblau entry
    #[arg(long = "literal-himmelblau")]
    literal_himmelblau: bool,
}

#[derive(Args)]
struct RunArgs {
    /// Objective name (see `pollen list-functions`)
    #[arg(long)]
    function: Option<String>,

    /// Problem dimension (default 10)
    #[arg(long)]
    dim: Option<usize>,

    /// Algorithm: "original" (fixed probability) or "proposed" (schedule)
    #[arg(long)]
    algorithm: Option<String>,

    #[command(flatten)]
    engine: EngineFlags,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Objective name (see `pollen list-functions`)
    #[arg(long)]
    function: Option<String>,

    /// Problem dimension (default 10)
    #[arg(long)]
    dim: Option<usize>,

    /// Algorithm: "original" (fixed probability) or "proposed" (schedule)
    #[arg(long)]
    algorithm: Option<String>,

    /// Independent runs (default 100)
    #[arg(long)]
    runs: Option<usize>,

    /// Worker threads (default: all available cores)
    #[arg(long)]
    workers: Option<usize>,

    /// Output directory (default "results")
    #[arg(long)]
    out: Option<PathBuf>,

    #[command(flatten)]
    engine: EngineFlags,
}

#[derive(Args)]
struct CompareArgs {
    /// Objective name (see `pollen list-functions`)
    #[arg(long)]
    function: Option<String>,

    /// Problem dimension (default 10)
    #[arg(long)]
    dim: Option<usize>,

    /// Independent runs per side (default 100)
    #[arg(long)]
    runs: Option<usize>,

    /// Worker threads (default: all available cores)
    #[arg(long)]
    workers: Option<usize>,

    /// Output directory (default "results")
    #[arg(long)]
    out: Option<PathBuf>,

    #[command(flatten)]
    engine: EngineFlags,
}

#[derive(Args)]
struct ReplicateArgs {
    /// Independent runs per cell (default 100; lower for desk-scale checks)
    #[arg(long)]
    runs: Option<usize>,

    /// Swarm size (default 50)
    #[arg(long)]
    pop: Option<usize>,

    /// Master seed shared by every cell (default 42)
    #[arg(long)]
    seed: Option<u64>,

    /// Tail exponent of the heavy-tailed step sampler, in (0, 2] (default 1.5)
    #[arg(long)]
    lambda: Option<f64>,

    /// Global step scale (default 1.0)
    #[arg(long)]
    gamma: Option<f64>,

    /// Schedule for the proposed side, e.g. "10:0.5,30:0.2,50:0.1"
    #[arg(long)]
    schedule: Option<String>,

    /// Worker threads (default: all available cores)
    #[arg(long)]
    workers: Option<usize>,

    /// Output directory (default "results")
    #[arg(long)]
    out: Option<PathBuf>,

    /// TOML config file (schema_version = 1)
    #[arg(long)]
    config: Option<PathBuf>,

    /// Step away from the best position instead of toward it
    #[arg(long = "eq1-sign")]
    eq1_sign: bool,

    /// Use the index-weighted quartic reading of the himmelblau entry
    #[arg(long = "literal-himmelblau")]
    literal_himmelblau: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Replicate(args) => cmd_replicate(args),
        Command::Compare(args) => cmd_compare(args),
        Command::ListFunctions => cmd_list_functions(),
    }
}

fn parse_schedule(text: &str) -> Result<SwitchProbabilitySchedule> {
    let mut anchors = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let (dimension, probability) = part.split_once(':').ok_or_else(|| {
            anyhow!("schedule: expected comma-separated dimension:probability pairs, got {part:?}")
        })?;
        let dimension = dimension
            .trim()
            .parse::<usize>()
            .with_context(|| format!("schedule: dimension {:?} is not an integer", dimension.trim()))?;
        let probability = probability
            .trim()
            .parse::<f64>()
            .with_context(|| format!("schedule: probability {:?} is not a number", probability.trim()))?;
        anchors.push((dimension, probability));
    }
    Ok(SwitchProbabilitySchedule::new(anchors)?)
}

fn parse_algorithm(text: &str) -> Result<Algorithm> {
    Algorithm::from_str(text).map_err(anyhow::Error::from)
}

/// Applies flag-over-file-over-default resolution and builds one experiment.
#[allow(clippy::too_many_arguments)]
fn resolve_experiment(
    function: Option<String>,
    dim: Option<usize>,
    algorithm: Algorithm,
    engine: &EngineFlags,
    file: &FileConfig,
    runs: Option<usize>,
    default_runs: usize,
    workers: Option<usize>,
    out: Option<PathBuf>,
) -> Result<ExperimentConfig> {
    let function = function
        .or_else(|| file.function.clone())
        .ok_or_else(|| anyhow!("function is required (flag --function or config key)"))?;
    let dimension = dim.or(file.dimension).unwrap_or(10);

    let mut cfg = ExperimentConfig::new(&function, dimension, algorithm)?
        .with_runs(runs.or(file.runs).unwrap_or(default_runs))?;
    if let Some(population) = engine.pop.or(file.population) {
        cfg = cfg.with_population_size(population)?;
    }
    if let Some(generations) = engine.generations.or(file.generations) {
        cfg = cfg.with_generations(generations)?;
    }
    if let Some(p) = engine.p.or(file.switch_probability) {
        cfg = cfg.with_switch_probability(p)?;
    }
    if let Some(text) = engine.schedule.as_deref().or(file.schedule.as_deref()) {
        cfg = cfg.with_schedule(parse_schedule(text)?);
    }
    if let Some(lambda) = engine.lambda.or(file.lambda) {
        cfg = cfg.with_levy_exponent(lambda)?;
    }
    if let Some(gamma) = engine.gamma.or(file.gamma) {
        cfg = cfg.with_step_scale(gamma)?;
    }
    if let Some(seed) = engine.seed.or(file.seed) {
        cfg = cfg.with_master_seed(seed);
    }
    if let Some(workers) = workers.or(file.workers) {
        cfg = cfg.with_workers(workers);
    }
    Ok(cfg
        .with_away_from_best(engine.eq1_sign || file.away_from_best.unwrap_or(false))
        .with_epsilon_per_coordinate(file.epsilon_per_coordinate.unwrap_or(false))
        .with_indexed_quartic(engine.literal_himmelblau || file.literal_himmelblau.unwrap_or(false))
        .with_output_dir(out.or_else(|| file.out.clone()).unwrap_or_else(|| PathBuf::from("results"))))
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let file = FileConfig::load(args.engine.config.as_deref())?;
    let algorithm = match args.algorithm.or_else(|| file.algorithm.clone()) {
        Some(text) => parse_algorithm(&text)?,
        None => Algorithm::Original,
    };
    let cfg = resolve_experiment(
        args.function,
        args.dim,
        algorithm,
        &args.engine,
        &file,
        Some(1),
        1,
        None,
        None,
    )?;
    let result = single_run(&cfg)?;
    println!(
        "function: {} ({}), d = {}",
        cfg.function_name(),
        cfg.function_label(),
        cfg.dimension()
    );
    println!(
        "algorithm: {} (switch probability {})",
        result.algorithm(),
        result.switch_probability()
    );
    println!("seed: {}", result.seed());
    println!("best fitness: {}", result.best_fitness());
    println!("best position: {:?}", result.best_position());
    println!("evaluations used: {}", result.evaluations_used());
    Ok(())
}

fn print_statistics(label: &str, stats: &RunStatistics) {
    println!(
        "{label}: best {} worst {} mean {} median {} sd {}",
        format_scientific_3sig(stats.best),
        format_scientific_3sig(stats.worst),
        format_scientific_3sig(stats.mean),
        format_scientific_3sig(stats.median),
        format_scientific_3sig(stats.sd),
    );
}

fn cmd_experiment(args: ExperimentArgs) -> Result<()> {
    let file = FileConfig::load(args.engine.config.as_deref())?;
    let algorithm = match args.algorithm.or_else(|| file.algorithm.clone()) {
        Some(text) => parse_algorithm(&text)?,
        None => Algorithm::Original,
    };
    let cfg = resolve_experiment(
        args.function,
        args.dim,
        algorithm,
        &args.engine,
        &file,
        args.runs,
        DEFAULT_RUN_COUNT,
        args.workers,
        args.out,
    )?;
    let outcome = run_experiment(&cfg)?;
    println!(
        "wrote {} ({} runs of {} at d = {})",
        outcome.directory.display(),
        cfg.runs(),
        cfg.function_name(),
        cfg.dimension()
    );
    print_statistics("statistics", &outcome.statistics);
    println!("artifacts: runs.json, stats.csv, trace.csv, plot.svg");
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<()> {
    let mut engine = args.engine;
    let mut file = FileConfig::load(engine.config.as_deref())?;
    // Each probability flag customizes the side it belongs to: a fixed --p
    // tunes the original algorithm, a --schedule tunes the proposed one.
    // Stripping them here keeps the shared resolver from pinning both sides.
    let file_p = file.switch_probability.take();
    let file_schedule = file.schedule.take();
    let fixed_p = engine.p.take().or(file_p);
    let schedule_text = engine.schedule.take().or(file_schedule);

    let mut original = resolve_experiment(
        args.function.clone(),
        args.dim,
        Algorithm::Original,
        &engine,
        &file,
        args.runs,
        DEFAULT_RUN_COUNT,
        args.workers,
        args.out.clone(),
    )?;
    if let Some(p) = fixed_p {
        original = original.with_switch_probability(p)?;
    }
    let mut proposed = resolve_experiment(
        args.function,
        args.dim,
        Algorithm::Proposed,
        &engine,
        &file,
        args.runs,
        DEFAULT_RUN_COUNT,
        args.workers,
        args.out,
    )?;
    if let Some(text) = schedule_text.as_deref() {
        proposed = proposed.with_schedule(parse_schedule(text)?);
    }
    let outcome = compare_algorithms(&original, &proposed)?;
    let record = &outcome.record;

    println!("{TABLE_HEADER}");
    println!(
        "{}",
        statistics_row(
            &record.function,
            &record.label,
            record.first_algorithm,
            record.dimension,
            &record.first
        )
    );
    println!(
        "{}",
        statistics_row(
            &record.function,
            &record.label,
            record.second_algorithm,
            record.dimension,
            &record.second
        )
    );
    let better = match record.better_mean {
        BetterMean::First => format!("{}", record.first_algorithm),
        BetterMean::Second => format!("{}", record.second_algorithm),
        BetterMean::Tie => "tie".to_string(),
    };
    match record.mean_ratio {
        Some(ratio) => println!("better mean: {better} (mean ratio original/proposed = {ratio})"),
        None => println!("better mean: {better} (mean ratio undefined)"),
    }
    println!(
        "rank-sum: U = {}, z = {}, p = {} ({})",
        record.rank_sum.u_statistic,
        record.rank_sum.z_score,
        record.rank_sum.p_value,
        record.rank_sum.method
    );

    let stem = format!("{}_{}_comparison", record.function, record.dimension);
    let json_path = original.output_dir().join(format!("{stem}.json"));
    let csv_path = original.output_dir().join(format!("{stem}.csv"));
    write_comparison_record(&json_path, record)?;
    emit_table(std::slice::from_ref(record), &csv_path)?;
    println!("wrote {} and {}", json_path.display(), csv_path.display());
    Ok(())
}

fn cmd_replicate(args: ReplicateArgs) -> Result<()> {
    let file = FileConfig::load(args.config.as_deref())?;
    let out = args
        .out
        .or_else(|| file.out.clone())
        .unwrap_or_else(|| PathBuf::from("results"));
    let mut protocol = ReplicationProtocol::new(out);
    if let Some(runs) = args.runs.or(file.runs) {
        protocol = protocol.with_runs(runs)?;
    }
    if let Some(population) = args.pop.or(file.population) {
        protocol = protocol.with_population_size(population)?;
    }
    if let Some(seed) = args.seed.or(file.seed) {
        protocol = protocol.with_master_seed(seed);
    }
    if let Some(lambda) = args.lambda.or(file.lambda) {
        protocol = protocol.with_levy_exponent(lambda)?;
    }
    if let Some(gamma) = args.gamma.or(file.gamma) {
        protocol = protocol.with_step_scale(gamma)?;
    }
    if let Some(text) = args.schedule.as_deref().or(file.schedule.as_deref()) {
        protocol = protocol.with_schedule(parse_schedule(text)?);
    }
    if let Some(workers) = args.workers.or(file.workers) {
        protocol = protocol.with_workers(workers);
    }
    protocol = protocol
        .with_away_from_best(args.eq1_sign || file.away_from_best.unwrap_or(false))
        .with_epsilon_per_coordinate(file.epsilon_per_coordinate.unwrap_or(false))
        .with_indexed_quartic(args.literal_himmelblau || file.literal_himmelblau.unwrap_or(false));

    let summary = run_replication(&protocol)?;
    let proposed_wins = summary
        .records
        .iter()
        .filter(|r| r.better_mean == BetterMean::Second)
        .count();
    println!(
        "replicated {} comparisons ({} runs per cell)",
        summary.records.len(),
        protocol.runs()
    );
    println!("table: {}", summary.table_path.display());
    for figure in &summary.figure_paths {
        println!("figure: {}", figure.display());
    }
    println!(
        "proposed mean lower in {proposed_wins}/{} cells",
        summary.records.len()
    );
    Ok(())
}

fn cmd_list_functions() -> Result<()> {
    for name in FUNCTION_NAMES {
        let f = registry_lookup(name, 2)?;
        let bounds = format!("[{}, {}]", f.bounds().lower(), f.bounds().upper());
        let minimum = match f.known_minimum_value() {
            Some(value) => format!("minimum {value}"),
            None => "minimum unknown".to_string(),
        };
        println!(
            "{}  {:<11} bounds {:<14} {:<10} {}",
            f.label(),
            f.name(),
            bounds,
            f.modality().to_string(),
            minimum
        );
    }
    Ok(())
}

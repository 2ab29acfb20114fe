//! Batch experiment runner: many seeded runs per configuration, aggregated
//! statistics, and self-describing on-disk records.
//!
//! An experiment executes `runs` independent engine runs whose seeds derive
//! from one master seed by run index, so a 100-run experiment contains the
//! 30-run experiment with the same master seed as an exact prefix. Runs may
//! execute on a worker pool; aggregation sorts per-run values first, so every
//! reported number is bit-identical regardless of worker count or completion
//! order. Each experiment persists four files in its own directory: a
//! structured JSON record (config echo, statistics, per-run results), a
//! one-row statistics table, the aggregated convergence trace, and an SVG
//! rendering of that trace.

pub mod plot;
pub mod report;
pub mod stats;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::benchmarks::registry_lookup_with;
use crate::error::{Error, Result};
use crate::fpa::{
    run, run_improved, Algorithm, FpaConfig, RunResult, SwitchProbabilitySchedule,
    DEFAULT_POPULATION_SIZE, DEFAULT_STEP_SCALE, DEFAULT_SWITCH_PROBABILITY,
};
use crate::levy::{mantegna_sigma, DEFAULT_LEVY_EXPONENT};
use crate::numeric::CompensatedSum;
use crate::rng::derive_seed;

pub use plot::{render_convergence_svg, write_convergence_plot, PlotPanel, TraceSeries};
pub use report::{
    compare_algorithms, emit_table, format_scientific_3sig, run_replication, statistics_row,
    write_comparison_record, BetterMean, ComparisonOutcome, ComparisonRecord,
    ReplicationProtocol, ReplicationSummary, TABLE_HEADER,
};
pub use stats::{compute_statistics, rank_sum_test, RankSumTest, RunStatistics};

/// Default master seed for experiments.
pub const DEFAULT_MASTER_SEED: u64 = 42;

/// Default number of independent runs per experiment.
pub const DEFAULT_RUN_COUNT: usize = 100;

/// Version string embedded in every structured output record.
pub const LIBRARY_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Generation budget paired with each reference dimension; other dimensions
/// take the nearest entry (midpoints resolve to the lower dimension, the same
/// policy the switch-probability schedule uses).
const GENERATION_DEFAULTS: [(usize, usize); 3] = [(10, 1000), (30, 1500), (50, 2500)];

/// Default generation budget for a dimension.
pub fn default_generations_for(dimension: usize) -> usize {
    let mut choice = GENERATION_DEFAULTS[0];
    for &(dim, generations) in &GENERATION_DEFAULTS[1..] {
        if dimension.abs_diff(dim) < dimension.abs_diff(choice.0) {
            choice = (dim, generations);
        }
    }
    choice.1
}

/// Cross-run aggregation of best-so-far traces: per generation, the mean of
/// the runs' values plus their min/max envelope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTrace {
    mean: Vec<f64>,
    min: Vec<f64>,
    max: Vec<f64>,
}

impl ConvergenceTrace {
    /// Aggregates per-run traces of equal length.
    ///
    /// Each generation's column is sorted before summation, so the result is
    /// bit-identical under any permutation of the runs.
    pub fn from_runs(traces: &[&[f64]]) -> Result<Self> {
        if traces.is_empty() {
            return Err(Error::EmptySample);
        }
        let generations = traces[0].len();
        for trace in traces {
            if trace.len() != generations {
                return Err(Error::TraceLengthMismatch {
                    expected: generations,
                    found: trace.len(),
                });
            }
            if let Some(index) = trace.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter {
                    field: "convergence trace",
                    message: format!("non-finite value at generation {index}"),
                });
            }
        }
        if generations == 0 {
            return Err(Error::InvalidParameter {
                field: "convergence trace",
                message: "traces must cover at least one generation".into(),
            });
        }
        let runs = traces.len();
        let mut mean = Vec::with_capacity(generations);
        let mut min = Vec::with_capacity(generations);
        let mut max = Vec::with_capacity(generations);
        let mut column = vec![0.0; runs];
        for g in 0..generations {
            for (slot, trace) in column.iter_mut().zip(traces) {
                *slot = trace[g];
            }
            column.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finiteness checked above"));
            let lowest = column[0];
            let highest = column[runs - 1];
            let mut total = CompensatedSum::new();
            for &v in &column {
                total.add(v);
            }
            min.push(lowest);
            max.push(highest);
            // Mathematically confined to [min, max]; clamp restores the
            // invariant if the final rounding overshoots by an ulp.
            mean.push((total.value() / runs as f64).clamp(lowest, highest));
        }
        Ok(Self { mean, min, max })
    }

    /// Number of generations covered.
    pub fn generations(&self) -> usize {
        self.mean.len()
    }

    /// Per-generation mean of the runs' best-so-far values.
    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    /// Per-generation minimum across runs.
    pub fn min(&self) -> &[f64] {
        &self.min
    }

    /// Per-generation maximum across runs.
    pub fn max(&self) -> &[f64] {
        &self.max
    }
}

/// One run's persisted record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    /// Position of this run in the experiment (seed-derivation index).
    pub run_index: usize,
    /// Stream seed derived from the master seed and `run_index`.
    pub seed: u64,
    /// Switch probability the run actually used.
    pub switch_probability: f64,
    /// Lowest objective value the run found.
    pub best_fitness: f64,
    /// Objective evaluations consumed.
    pub evaluations_used: u64,
    /// Position achieving `best_fitness`.
    pub best_position: Vec<f64>,
}

/// Everything an experiment produces, plus where it was persisted.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    /// Aggregate of the per-run best values.
    pub statistics: RunStatistics,
    /// Cross-run convergence aggregate.
    pub trace: ConvergenceTrace,
    /// Per-run records in run-index order.
    pub runs: Vec<RunRecord>,
    /// Directory holding `runs.json`, `stats.csv`, `trace.csv`, `plot.svg`.
    pub directory: PathBuf,
}

/// A batch configuration: which objective, which algorithm, how many runs,
/// and every engine parameter. Construct with [`ExperimentConfig::new`]
/// (which applies the documented defaults) and adjust via `with_*` methods.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    function_name: String,
    function_label: &'static str,
    dimension: usize,
    algorithm: Algorithm,
    runs: usize,
    population_size: usize,
    generations: usize,
    switch_probability: Option<f64>,
    schedule: SwitchProbabilitySchedule,
    levy_exponent: f64,
    step_scale: f64,
    master_seed: u64,
    away_from_best: bool,
    epsilon_per_coordinate: bool,
    indexed_quartic: bool,
    workers: usize,
    output_dir: PathBuf,
}

impl ExperimentConfig {
    /// Builds a config with the protocol defaults: 100 runs, 50 members,
    /// generations keyed to the dimension (1000/1500/2500 at d = 10/30/50),
    /// λ = 1.5, γ = 1.0, master seed 42, standard schedule, output under
    /// `results/`, worker count left to the runtime.
    pub fn new(function_name: &str, dimension: usize, algorithm: Algorithm) -> Result<Self> {
        let function = registry_lookup_with(function_name, dimension, false)?;
        Ok(Self {
            function_name: function_name.to_string(),
            function_label: function.label(),
            dimension,
            algorithm,
            runs: DEFAULT_RUN_COUNT,
            population_size: DEFAULT_POPULATION_SIZE,
            generations: default_generations_for(dimension),
            switch_probability: None,
            schedule: SwitchProbabilitySchedule::standard(),
            levy_exponent: DEFAULT_LEVY_EXPONENT,
            step_scale: DEFAULT_STEP_SCALE,
            master_seed: DEFAULT_MASTER_SEED,
            away_from_best: false,
            epsilon_per_coordinate: false,
            indexed_quartic: false,
            workers: 0,
            output_dir: PathBuf::from("results"),
        })
    }

    /// Sets the number of independent runs (at least 1).
    pub fn with_runs(mut self, runs: usize) -> Result<Self> {
        if runs == 0 {
            return Err(Error::InvalidParameter {
                field: "runs",
                message: "at least one run is required".into(),
            });
        }
        self.runs = runs;
        Ok(self)
    }

    /// Sets the swarm size (at least 2).
    pub fn with_population_size(mut self, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::PopulationTooSmall { size: n, minimum: 2 });
        }
        self.population_size = n;
        Ok(self)
    }

    /// Sets the generation budget (at least 1).
    pub fn with_generations(mut self, generations: usize) -> Result<Self> {
        if generations == 0 {
            return Err(Error::InvalidParameter {
                field: "generations",
                message: "at least one generation is required".into(),
            });
        }
        self.generations = generations;
        Ok(self)
    }

    /// Pins an explicit constant switch probability, overriding both the
    /// original default (0.8) and the proposed schedule.
    pub fn with_switch_probability(mut self, p: f64) -> Result<Self> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter {
                field: "switch probability",
                message: format!("must lie in [0, 1], got {p}"),
            });
        }
        self.switch_probability = Some(p);
        Ok(self)
    }

    /// Replaces the dimension-keyed schedule used by the proposed algorithm.
    pub fn with_schedule(mut self, schedule: SwitchProbabilitySchedule) -> Self {
        self.schedule = schedule;
        self
    }

    /// Sets the Lévy tail exponent, in (0, 2].
    pub fn with_levy_exponent(mut self, lambda: f64) -> Result<Self> {
        mantegna_sigma(lambda)?;
        self.levy_exponent = lambda;
        Ok(self)
    }

    /// Sets the global step scale γ (finite, strictly positive).
    pub fn with_step_scale(mut self, gamma: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "step scale",
                message: format!("must be finite and positive, got {gamma}"),
            });
        }
        self.step_scale = gamma;
        Ok(self)
    }

    /// Sets the master seed runs derive their stream seeds from.
    pub fn with_master_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    /// Flips the global-step direction to point away from the best solution.
    pub fn with_away_from_best(mut self, away: bool) -> Self {
        self.away_from_best = away;
        self
    }

    /// Draws one ε per coordinate in local steps instead of a single scalar.
    pub fn with_epsilon_per_coordinate(mut self, per_coordinate: bool) -> Self {
        self.epsilon_per_coordinate = per_coordinate;
        self
    }

    /// Selects the index-weighted reading of the quartic objective (only
    /// affects `himmelblau`; its closed-form minimum is then unknown).
    pub fn with_indexed_quartic(mut self, indexed: bool) -> Self {
        self.indexed_quartic = indexed;
        self
    }

    /// Caps the worker pool; 0 leaves the count to the runtime, 1 forces
    /// fully sequential execution. Not part of the persisted config echo —
    /// results are identical for every worker count.
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    /// Sets the directory experiments persist under. Not part of the
    /// persisted config echo.
    pub fn with_output_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.output_dir = dir.into();
        self
    }

    /// Objective name.
    pub fn function_name(&self) -> &str {
        &self.function_name
    }

    /// Short table label (`f1` … `f6`).
    pub fn function_label(&self) -> &'static str {
        self.function_label
    }

    /// Problem dimension.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Which algorithm the experiment runs.
    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    /// Number of independent runs.
    pub fn runs(&self) -> usize {
        self.runs
    }

    /// Swarm size per run.
    pub fn population_size(&self) -> usize {
        self.population_size
    }

    /// Generation budget per run.
    pub fn generations(&self) -> usize {
        self.generations
    }

    /// Explicit constant switch probability, if one was pinned.
    pub fn switch_probability(&self) -> Option<f64> {
        self.switch_probability
    }

    /// Schedule used by the proposed algorithm when no constant is pinned.
    pub fn schedule(&self) -> &SwitchProbabilitySchedule {
        &self.schedule
    }

    /// Lévy tail exponent λ.
    pub fn levy_exponent(&self) -> f64 {
        self.levy_exponent
    }

    /// Global step scale γ.
    pub fn step_scale(&self) -> f64 {
        self.step_scale
    }

    /// Master seed.
    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// Whether global steps point away from the best solution.
    pub fn away_from_best(&self) -> bool {
        self.away_from_best
    }

    /// Whether local steps draw ε per coordinate.
    pub fn epsilon_per_coordinate(&self) -> bool {
        self.epsilon_per_coordinate
    }

    /// Whether the index-weighted quartic reading is selected.
    pub fn indexed_quartic(&self) -> bool {
        self.indexed_quartic
    }

    /// Worker cap (0 = runtime default).
    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Output root directory.
    pub fn output_dir(&self) -> &Path {
        &self.output_dir
    }

    /// The switch probability a run of this config uses: an explicit
    /// constant wins; otherwise the original algorithm uses 0.8 and the
    /// proposed algorithm resolves its schedule at this dimension.
    pub fn effective_switch_probability(&self) -> f64 {
        match (self.algorithm, self.switch_probability) {
            (_, Some(p)) => p,
            (Algorithm::Original, None) => DEFAULT_SWITCH_PROBABILITY,
            (Algorithm::Proposed, None) => self.schedule.switch_probability_for(self.dimension),
        }
    }

    /// Directory this experiment persists into:
    /// `<out>/<function>_<dimension>_<algorithm>/`.
    pub fn experiment_directory(&self) -> PathBuf {
        self.output_dir.join(format!(
            "{}_{}_{}",
            self.function_name, self.dimension, self.algorithm
        ))
    }

    /// Builds the engine config for this experiment, seeded with the master
    /// seed (batch drivers re-seed per run).
    pub fn build_engine_config(&self) -> Result<FpaConfig> {
        let function =
            registry_lookup_with(&self.function_name, self.dimension, self.indexed_quartic)?;
        let mut engine = FpaConfig::new(function, self.generations, self.master_seed)?
            .with_population_size(self.population_size)?
            .with_levy_exponent(self.levy_exponent)?
            .with_step_scale(self.step_scale)?
            .with_away_from_best(self.away_from_best)
            .with_epsilon_per_coordinate(self.epsilon_per_coordinate);
        if self.algorithm == Algorithm::Original {
            engine = engine.with_switch_probability(self.effective_switch_probability())?;
        }
        Ok(engine)
    }

    /// Schedule handed to the proposed algorithm: an explicit constant
    /// becomes a single-anchor schedule at this dimension (and must then lie
    /// in (0, 1]); otherwise the configured schedule is used as-is.
    pub fn resolved_schedule(&self) -> Result<SwitchProbabilitySchedule> {
        match self.switch_probability {
            Some(p) => SwitchProbabilitySchedule::new(vec![(self.dimension, p)]),
            None => Ok(self.schedule.clone()),
        }
    }
}

/// Executes one run with the config's master seed used directly as the
/// stream seed (the single-run entry point; batch experiments derive one
/// seed per run instead).
pub fn single_run(cfg: &ExperimentConfig) -> Result<RunResult> {
    let engine = cfg.build_engine_config()?;
    Ok(match cfg.algorithm {
        Algorithm::Original => run(&engine),
        Algorithm::Proposed => run_improved(&engine, &cfg.resolved_schedule()?),
    })
}

/// Executes the config's runs and returns the raw engine results in
/// run-index order. Seeds derive from (master seed, run index), so a longer
/// experiment contains every shorter one with the same master seed as a
/// prefix.
pub fn execute_runs(cfg: &ExperimentConfig) -> Result<Vec<RunResult>> {
    let base = cfg.build_engine_config()?;
    let schedule = cfg.resolved_schedule()?;
    let one = |run_index: usize| -> RunResult {
        let seeded = base
            .clone()
            .with_seed(derive_seed(cfg.master_seed, run_index as u64));
        match cfg.algorithm {
            Algorithm::Original => run(&seeded),
            Algorithm::Proposed => run_improved(&seeded, &schedule),
        }
    };
    let results = match cfg.workers {
        1 => (0..cfg.runs).map(one).collect(),
        0 => (0..cfg.runs).into_par_iter().map(one).collect(),
        workers => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::InvalidParameter {
                    field: "workers",
                    message: e.to_string(),
                })?;
            pool.install(|| (0..cfg.runs).into_par_iter().map(one).collect())
        }
    };
    Ok(results)
}

/// Runs the whole experiment: executes every run, aggregates, and persists
/// `runs.json`, `stats.csv`, `trace.csv`, and `plot.svg` into
/// [`ExperimentConfig::experiment_directory`].
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let results = execute_runs(cfg)?;
    let values: Vec<f64> = results.iter().map(|r| r.best_fitness()).collect();
    let statistics = stats::compute_statistics(&values)?;
    let traces: Vec<&[f64]> = results.iter().map(|r| r.fitness_trace()).collect();
    let trace = ConvergenceTrace::from_runs(&traces)?;
    let runs: Vec<RunRecord> = results
        .iter()
        .enumerate()
        .map(|(run_index, r)| RunRecord {
            run_index,
            seed: r.seed(),
            switch_probability: r.switch_probability(),
            best_fitness: r.best_fitness(),
            evaluations_used: r.evaluations_used(),
            best_position: r.best_position().to_vec(),
        })
        .collect();
    let directory = persist_experiment(cfg, &statistics, &trace, &runs)?;
    Ok(ExperimentOutcome {
        statistics,
        trace,
        runs,
        directory,
    })
}

/// Structured record written as `runs.json`.
#[derive(Serialize)]
struct RunsDocument<'a> {
    schema_version: u32,
    library_version: &'static str,
    /// Convention marker: the standard deviation uses divisor N.
    sd_divisor: &'static str,
    config: ConfigEcho<'a>,
    statistics: &'a RunStatistics,
    runs: &'a [RunRecord],
}

/// Every parameter that determines the numbers (worker count and output
/// location deliberately excluded — they cannot affect results).
#[derive(Serialize)]
struct ConfigEcho<'a> {
    function: &'a str,
    dimension: usize,
    algorithm: Algorithm,
    runs: usize,
    population_size: usize,
    generations: usize,
    /// Set when the algorithm runs a constant probability (always for the
    /// original; for the proposed only when one was pinned explicitly).
    switch_probability: Option<f64>,
    /// Set when the proposed algorithm resolves its dimension-keyed schedule.
    schedule: Option<&'a [(usize, f64)]>,
    levy_exponent: f64,
    step_scale: f64,
    master_seed: u64,
    away_from_best: bool,
    epsilon_per_coordinate: bool,
    indexed_quartic: bool,
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        action: "write",
        path: path.to_path_buf(),
        source,
    })
}

fn persist_experiment(
    cfg: &ExperimentConfig,
    statistics: &RunStatistics,
    trace: &ConvergenceTrace,
    runs: &[RunRecord],
) -> Result<PathBuf> {
    let dir = cfg.experiment_directory();
    std::fs::create_dir_all(&dir).map_err(|source| Error::Io {
        action: "create output directory",
        path: dir.clone(),
        source,
    })?;

    let uses_schedule =
        cfg.algorithm == Algorithm::Proposed && cfg.switch_probability.is_none();
    let echo = ConfigEcho {
        function: &cfg.function_name,
        dimension: cfg.dimension,
        algorithm: cfg.algorithm,
        runs: cfg.runs,
        population_size: cfg.population_size,
        generations: cfg.generations,
        switch_probability: (!uses_schedule).then(|| cfg.effective_switch_probability()),
        schedule: uses_schedule.then(|| cfg.schedule.anchors()),
        levy_exponent: cfg.levy_exponent,
        step_scale: cfg.step_scale,
        master_seed: cfg.master_seed,
        away_from_best: cfg.away_from_best,
        epsilon_per_coordinate: cfg.epsilon_per_coordinate,
        indexed_quartic: cfg.indexed_quartic,
    };
    let document = RunsDocument {
        schema_version: 1,
        library_version: LIBRARY_VERSION,
        sd_divisor: "N",
        config: echo,
        statistics,
        runs,
    };
    let mut json = serde_json::to_string_pretty(&document).map_err(|e| Error::Encode {
        what: "runs document",
        message: e.to_string(),
    })?;
    json.push('\n');
    write_file(&dir.join("runs.json"), &json)?;

    let mut table = String::from(report::TABLE_HEADER);
    table.push('\n');
    table.push_str(&report::statistics_row(
        &cfg.function_name,
        cfg.function_label,
        cfg.algorithm,
        cfg.dimension,
        statistics,
    ));
    table.push('\n');
    write_file(&dir.join("stats.csv"), &table)?;

    let mut series = String::from("generation,mean,min,max\n");
    for g in 0..trace.generations() {
        let line = format!(
            "{},{},{},{}\n",
            g + 1,
            trace.mean()[g],
            trace.min()[g],
            trace.max()[g]
        );
        series.push_str(&line);
    }
    write_file(&dir.join("trace.csv"), &series)?;

    let panel = PlotPanel {
        title: format!("{} d = {} ({})", cfg.function_name, cfg.dimension, cfg.algorithm),
        series: vec![TraceSeries {
            label: curve_label(cfg.algorithm).to_string(),
            trace: trace.clone(),
        }],
    };
    plot::write_convergence_plot(&dir.join("plot.svg"), &[panel])?;

    Ok(dir)
}

/// Legend name for an algorithm's curve.
pub fn curve_label(algorithm: Algorithm) -> &'static str {
    match algorithm {
        Algorithm::Original => "FPA",
        Algorithm::Proposed => "Proposed FPA",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_defaults_follow_the_reference_dimensions() {
        assert_eq!(default_generations_for(10), 1000);
        assert_eq!(default_generations_for(30), 1500);
        assert_eq!(default_generations_for(50), 2500);
        // Off-anchor dimensions take the nearest entry; midpoints go low.
        assert_eq!(default_generations_for(1), 1000);
        assert_eq!(default_generations_for(20), 1000);
        assert_eq!(default_generations_for(21), 1500);
        assert_eq!(default_generations_for(40), 1500);
        assert_eq!(default_generations_for(41), 2500);
        assert_eq!(default_generations_for(200), 2500);
    }

    #[test]
    fn config_defaults_match_the_documented_protocol() {
        let cfg = ExperimentConfig::new("sphere", 30, Algorithm::Proposed).unwrap();
        assert_eq!(cfg.runs(), 100);
        assert_eq!(cfg.population_size(), 50);
        assert_eq!(cfg.generations(), 1500);
        assert_eq!(cfg.master_seed(), 42);
        assert_eq!(cfg.levy_exponent(), 1.5);
        assert_eq!(cfg.step_scale(), 1.0);
        assert_eq!(cfg.function_label(), "f4");
        assert_eq!(cfg.output_dir(), Path::new("results"));
    }

    #[test]
    fn construction_validates_the_problem() {
        assert!(ExperimentConfig::new("nosuch", 10, Algorithm::Original).is_err());
        assert!(ExperimentConfig::new("rosenbrock", 1, Algorithm::Original).is_err());
        let cfg = ExperimentConfig::new("sphere", 10, Algorithm::Original).unwrap();
        assert!(cfg.clone().with_runs(0).is_err());
        assert!(cfg.clone().with_population_size(1).is_err());
        assert!(cfg.clone().with_generations(0).is_err());
        assert!(cfg.clone().with_switch_probability(1.5).is_err());
        assert!(cfg.clone().with_levy_exponent(-1.0).is_err());
        assert!(cfg.with_step_scale(0.0).is_err());
    }

    #[test]
    fn effective_probability_resolution_order() {
        let original = ExperimentConfig::new("sphere", 30, Algorithm::Original).unwrap();
        assert_eq!(original.effective_switch_probability(), 0.8);
        let proposed = ExperimentConfig::new("sphere", 30, Algorithm::Proposed).unwrap();
        assert_eq!(proposed.effective_switch_probability(), 0.2);
        let pinned = proposed.with_switch_probability(0.35).unwrap();
        assert_eq!(pinned.effective_switch_probability(), 0.35);
    }

    #[test]
    fn pinned_probability_becomes_a_single_anchor_schedule() {
        let cfg = ExperimentConfig::new("sphere", 30, Algorithm::Proposed)
            .unwrap()
            .with_switch_probability(0.35)
            .unwrap();
        let schedule = cfg.resolved_schedule().unwrap();
        assert_eq!(schedule.anchors(), &[(30, 0.35)]);
        // A pinned 0 cannot be expressed as a proposed-algorithm schedule.
        let zero = ExperimentConfig::new("sphere", 30, Algorithm::Proposed)
            .unwrap()
            .with_switch_probability(0.0)
            .unwrap();
        assert!(zero.resolved_schedule().is_err());
    }

    #[test]
    fn experiment_directory_names_the_cell() {
        let cfg = ExperimentConfig::new("griewank", 50, Algorithm::Proposed)
            .unwrap()
            .with_output_dir("out");
        assert_eq!(
            cfg.experiment_directory(),
            Path::new("out").join("griewank_50_proposed")
        );
    }

    #[test]
    fn trace_aggregation_by_hand() {
        let a = [3.0, 2.0];
        let b = [1.0, 1.0];
        let t = ConvergenceTrace::from_runs(&[&a, &b]).unwrap();
        assert_eq!(t.mean(), &[2.0, 1.5]);
        assert_eq!(t.min(), &[1.0, 1.0]);
        assert_eq!(t.max(), &[3.0, 2.0]);
        assert_eq!(t.generations(), 2);
    }

    #[test]
    fn trace_aggregation_rejects_bad_input() {
        assert!(matches!(
            ConvergenceTrace::from_runs(&[]),
            Err(Error::EmptySample)
        ));
        let a = [1.0, 2.0];
        let b = [1.0];
        assert!(matches!(
            ConvergenceTrace::from_runs(&[&a, &b]),
            Err(Error::TraceLengthMismatch { .. })
        ));
        let nan = [f64::NAN];
        assert!(ConvergenceTrace::from_runs(&[&nan]).is_err());
    }

    #[test]
    fn trace_aggregation_is_permutation_invariant() {
        let a = [3.0, 2.0, 0.5];
        let b = [1.0, 0.9, 0.9];
        let c = [2.2, 2.2, 2.2];
        let forward = ConvergenceTrace::from_runs(&[&a, &b, &c]).unwrap();
        let shuffled = ConvergenceTrace::from_runs(&[&c, &a, &b]).unwrap();
        assert_eq!(forward, shuffled);
    }

    #[test]
    fn single_run_dispatches_on_algorithm_and_is_deterministic() {
        let base = ExperimentConfig::new("sphere", 10, Algorithm::Original)
            .unwrap()
            .with_generations(40)
            .unwrap()
            .with_population_size(10)
            .unwrap();
        let a = single_run(&base).unwrap();
        let b = single_run(&base).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.algorithm(), Algorithm::Original);
        assert_eq!(a.switch_probability(), 0.8);
        assert_eq!(a.seed(), 42);

        let proposed = ExperimentConfig::new("sphere", 10, Algorithm::Proposed)
            .unwrap()
            .with_generations(40)
            .unwrap()
            .with_population_size(10)
            .unwrap();
        let c = single_run(&proposed).unwrap();
        assert_eq!(c.algorithm(), Algorithm::Proposed);
        assert_eq!(c.switch_probability(), 0.5);
    }
}

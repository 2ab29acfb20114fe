//! Paired comparisons, delimiter-separated tables, and the full
//! two-algorithm replication grid.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::benchmarks::FUNCTION_NAMES;
use crate::error::{Error, Result};
use crate::fpa::{Algorithm, SwitchProbabilitySchedule};
use crate::levy::DEFAULT_LEVY_EXPONENT;

use super::plot::{write_convergence_plot, PlotPanel, TraceSeries};
use super::stats::{rank_sum_test, RankSumTest, RunStatistics};
use super::{
    curve_label, run_experiment, write_file, ExperimentConfig, ExperimentOutcome,
    DEFAULT_MASTER_SEED, DEFAULT_RUN_COUNT,
};
use crate::fpa::{DEFAULT_POPULATION_SIZE, DEFAULT_STEP_SCALE};

/// Header row of every emitted statistics table.
pub const TABLE_HEADER: &str = "Function,Name,Algorithm,Dimension,Best,Worst,Mean,Median,SD";

/// Formats a value in scientific notation with three significant digits and
/// a signed two-digit exponent, e.g. `1.54E+00` or `-3.97E+01`.
pub fn format_scientific_3sig(value: f64) -> String {
    if !value.is_finite() {
        return format!("{value}");
    }
    if value == 0.0 {
        return "0.00E+00".to_string();
    }
    let raw = format!("{value:.2E}");
    let (mantissa, exponent) = raw
        .split_once('E')
        .expect("scientific formatting always contains an exponent");
    let exp: i32 = exponent
        .parse()
        .expect("scientific exponent is a small integer");
    format!("{mantissa}E{exp:+03}")
}

/// One table row in the emitted column order.
pub fn statistics_row(
    function: &str,
    label: &str,
    algorithm: Algorithm,
    dimension: usize,
    s: &RunStatistics,
) -> String {
    format!(
        "{function},{label},{algorithm},{dimension},{},{},{},{},{}",
        format_scientific_3sig(s.best),
        format_scientific_3sig(s.worst),
        format_scientific_3sig(s.mean),
        format_scientific_3sig(s.median),
        format_scientific_3sig(s.sd),
    )
}

/// Which side of a comparison achieved the lower (better) mean — the
/// machine-readable equivalent of the boldface marking in a results table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BetterMean {
    First,
    Second,
    Tie,
}

/// Paired statistics for one problem cell.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRecord {
    /// Objective name.
    pub function: String,
    /// Short table label (`f1` … `f6`).
    pub label: String,
    /// Problem dimension.
    pub dimension: usize,
    /// Algorithm of the first side.
    pub first_algorithm: Algorithm,
    /// Algorithm of the second side.
    pub second_algorithm: Algorithm,
    /// Aggregate statistics of the first side.
    pub first: RunStatistics,
    /// Aggregate statistics of the second side.
    pub second: RunStatistics,
    /// Side with the lower mean.
    pub better_mean: BetterMean,
    /// First mean divided by second mean; exactly 1.0 when the means are
    /// equal, absent when the quotient is not finite.
    pub mean_ratio: Option<f64>,
    /// Rank-sum significance indicator (labeled artifact extension).
    pub rank_sum: RankSumTest,
}

/// A comparison plus both sides' full experiment outcomes.
#[derive(Debug, Clone)]
pub struct ComparisonOutcome {
    /// The paired record.
    pub record: ComparisonRecord,
    /// Outcome of the first config.
    pub first: ExperimentOutcome,
    /// Outcome of the second config.
    pub second: ExperimentOutcome,
}

fn require_matching(field: &str, first: &dyn std::fmt::Display, second: &dyn std::fmt::Display) -> Result<()> {
    let (a, b) = (first.to_string(), second.to_string());
    if a != b {
        return Err(Error::ComparisonMismatch {
            message: format!("{field} differs ({a} vs {b})"),
        });
    }
    Ok(())
}

/// Runs both configs (persisting each normally) and pairs their statistics.
///
/// The two sides must describe the same problem and budget: function,
/// dimension, run count, swarm size, and generations all have to match.
pub fn compare_algorithms(
    first_cfg: &ExperimentConfig,
    second_cfg: &ExperimentConfig,
) -> Result<ComparisonOutcome> {
    require_matching(
        "function",
        &first_cfg.function_name(),
        &second_cfg.function_name(),
    )?;
    require_matching("dimension", &first_cfg.dimension(), &second_cfg.dimension())?;
    require_matching("runs", &first_cfg.runs(), &second_cfg.runs())?;
    require_matching(
        "population size",
        &first_cfg.population_size(),
        &second_cfg.population_size(),
    )?;
    require_matching(
        "generations",
        &first_cfg.generations(),
        &second_cfg.generations(),
    )?;

    let first = run_experiment(first_cfg)?;
    let second = run_experiment(second_cfg)?;
    let first_values: Vec<f64> = first.runs.iter().map(|r| r.best_fitness).collect();
    let second_values: Vec<f64> = second.runs.iter().map(|r| r.best_fitness).collect();
    let rank_sum = rank_sum_test(&first_values, &second_values)?;

    let better_mean = if first.statistics.mean < second.statistics.mean {
        BetterMean::First
    } else if second.statistics.mean < first.statistics.mean {
        BetterMean::Second
    } else {
        BetterMean::Tie
    };
    let mean_ratio = if first.statistics.mean == second.statistics.mean {
        Some(1.0)
    } else {
        let ratio = first.statistics.mean / second.statistics.mean;
        ratio.is_finite().then_some(ratio)
    };

    let record = ComparisonRecord {
        function: first_cfg.function_name().to_string(),
        label: first_cfg.function_label().to_string(),
        dimension: first_cfg.dimension(),
        first_algorithm: first_cfg.algorithm(),
        second_algorithm: second_cfg.algorithm(),
        first: first.statistics,
        second: second.statistics,
        better_mean,
        mean_ratio,
        rank_sum,
    };
    Ok(ComparisonOutcome {
        record,
        first,
        second,
    })
}

/// Writes comparison records as a delimiter-separated table: one header and
/// two rows per record (first side, then second side).
pub fn emit_table(records: &[ComparisonRecord], path: &Path) -> Result<()> {
    if records.is_empty() {
        return Err(Error::InvalidParameter {
            field: "comparison records",
            message: "at least one record is required".into(),
        });
    }
    let mut table = String::from(TABLE_HEADER);
    table.push('\n');
    for record in records {
        for (algorithm, side) in [
            (record.first_algorithm, &record.first),
            (record.second_algorithm, &record.second),
        ] {
            table.push_str(&statistics_row(
                &record.function,
                &record.label,
                algorithm,
                record.dimension,
                side,
            ));
            table.push('\n');
        }
    }
    write_file(path, &table)
}

/// Writes one comparison record as pretty-printed JSON.
pub fn write_comparison_record(path: &Path, record: &ComparisonRecord) -> Result<()> {
    let mut json = serde_json::to_string_pretty(record).map_err(|e| Error::Encode {
        what: "comparison record",
        message: e.to_string(),
    })?;
    json.push('\n');
    write_file(path, &json)
}

/// The full replication grid: every registered function at d ∈ {10, 30, 50},
/// original vs proposed, one table and one figure per function.
#[derive(Debug, Clone)]
pub struct ReplicationProtocol {
    runs: usize,
    population_size: usize,
    master_seed: u64,
    levy_exponent: f64,
    step_scale: f64,
    schedule: SwitchProbabilitySchedule,
    away_from_best: bool,
    epsilon_per_coordinate: bool,
    indexed_quartic: bool,
    workers: usize,
    output_dir: PathBuf,
}

impl ReplicationProtocol {
    /// Protocol defaults: 100 runs, 50 members, master seed 42, λ = 1.5,
    /// γ = 1.0, the standard schedule, runtime-chosen worker count.
    pub fn new(output_dir: impl Into<PathBuf>) -> Self {
        Self {
            runs: DEFAULT_RUN_COUNT,
            population_size: DEFAULT_POPULATION_SIZE,
            master_seed: DEFAULT_MASTER_SEED,
            levy_exponent: DEFAULT_LEVY_EXPONENT,
            step_scale: DEFAULT_STEP_SCALE,
            schedule: SwitchProbabilitySchedule::standard(),
            away_from_best: false,
            epsilon_per_coordinate: false,
            indexed_quartic: false,
            workers: 0,
            output_dir: output_dir.into(),
        }
    }

    /// Sets the number of runs per cell (at least 1).
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

    /// Sets the master seed shared by every cell.
    pub fn with_master_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    /// Sets the Lévy tail exponent, in (0, 2].
    pub fn with_levy_exponent(mut self, lambda: f64) -> Result<Self> {
        crate::levy::mantegna_sigma(lambda)?;
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

    /// Replaces the proposed algorithm's schedule.
    pub fn with_schedule(mut self, schedule: SwitchProbabilitySchedule) -> Self {
        self.schedule = schedule;
        self
    }

    /// Flips the global-step direction on both algorithms.
    pub fn with_away_from_best(mut self, away: bool) -> Self {
        self.away_from_best = away;
        self
    }

    /// Draws ε per coordinate on both algorithms.
    pub fn with_epsilon_per_coordinate(mut self, per_coordinate: bool) -> Self {
        self.epsilon_per_coordinate = per_coordinate;
        self
    }

    /// Selects the index-weighted quartic reading.
    pub fn with_indexed_quartic(mut self, indexed: bool) -> Self {
        self.indexed_quartic = indexed;
        self
    }

    /// Caps the worker pool (0 = runtime default).
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    /// Runs per cell.
    pub fn runs(&self) -> usize {
        self.runs
    }

    /// Output root directory.
    pub fn output_dir(&self) -> &Path {
        &self.output_dir
    }

    fn experiment_config(
        &self,
        function: &str,
        dimension: usize,
        algorithm: Algorithm,
    ) -> Result<ExperimentConfig> {
        Ok(ExperimentConfig::new(function, dimension, algorithm)?
            .with_runs(self.runs)?
            .with_population_size(self.population_size)?
            .with_levy_exponent(self.levy_exponent)?
            .with_step_scale(self.step_scale)?
            .with_schedule(self.schedule.clone())
            .with_master_seed(self.master_seed)
            .with_away_from_best(self.away_from_best)
            .with_epsilon_per_coordinate(self.epsilon_per_coordinate)
            .with_indexed_quartic(self.indexed_quartic)
            .with_workers(self.workers)
            .with_output_dir(self.output_dir.clone()))
    }
}

/// What [`run_replication`] produced and where.
#[derive(Debug, Clone)]
pub struct ReplicationSummary {
    /// One record per (function, dimension) cell, in table order.
    pub records: Vec<ComparisonRecord>,
    /// The combined table (two rows per record).
    pub table_path: PathBuf,
    /// One three-panel convergence figure per function.
    pub figure_paths: Vec<PathBuf>,
}

/// Executes the whole grid — 6 functions × 3 dimensions × 2 algorithms — and
/// writes the combined table plus one convergence figure per function. Every
/// cell also persists its own experiment directory.
pub fn run_replication(protocol: &ReplicationProtocol) -> Result<ReplicationSummary> {
    std::fs::create_dir_all(&protocol.output_dir).map_err(|source| Error::Io {
        action: "create output directory",
        path: protocol.output_dir.clone(),
        source,
    })?;
    let mut records = Vec::with_capacity(FUNCTION_NAMES.len() * 3);
    let mut figure_paths = Vec::with_capacity(FUNCTION_NAMES.len());
    for function in FUNCTION_NAMES {
        let mut panels = Vec::with_capacity(3);
        for dimension in [10, 30, 50] {
            let original = protocol.experiment_config(function, dimension, Algorithm::Original)?;
            let proposed = protocol.experiment_config(function, dimension, Algorithm::Proposed)?;
            let outcome = compare_algorithms(&original, &proposed)?;
            panels.push(PlotPanel {
                title: format!("{function} d = {dimension}"),
                series: vec![
                    TraceSeries {
                        label: curve_label(Algorithm::Original).to_string(),
                        trace: outcome.first.trace.clone(),
                    },
                    TraceSeries {
                        label: curve_label(Algorithm::Proposed).to_string(),
                        trace: outcome.second.trace.clone(),
                    },
                ],
            });
            records.push(outcome.record);
        }
        let figure = protocol.output_dir.join(format!("{function}_convergence.svg"));
        write_convergence_plot(&figure, &panels)?;
        figure_paths.push(figure);
    }
    let table_path = protocol.output_dir.join("table.csv");
    emit_table(&records, &table_path)?;
    Ok(ReplicationSummary {
        records,
        table_path,
        figure_paths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific_formatting_matches_the_table_style() {
        assert_eq!(format_scientific_3sig(0.1536), "1.54E-01");
        assert_eq!(format_scientific_3sig(1.54), "1.54E+00");
        assert_eq!(format_scientific_3sig(-39.7), "-3.97E+01");
        assert_eq!(format_scientific_3sig(1234.0), "1.23E+03");
        assert_eq!(format_scientific_3sig(0.000001536), "1.54E-06");
        assert_eq!(format_scientific_3sig(3.324e-7), "3.32E-07");
        assert_eq!(format_scientific_3sig(0.0), "0.00E+00");
        assert_eq!(format_scientific_3sig(-0.0), "0.00E+00");
        assert_eq!(format_scientific_3sig(0.9999), "1.00E+00");
    }

    fn tiny_config(algorithm: Algorithm, dir: &Path) -> ExperimentConfig {
        ExperimentConfig::new("sphere", 10, algorithm)
            .unwrap()
            .with_runs(3)
            .unwrap()
            .with_generations(25)
            .unwrap()
            .with_population_size(8)
            .unwrap()
            .with_output_dir(dir)
    }

    #[test]
    fn self_comparison_is_a_tie_with_unit_ratio() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = tiny_config(Algorithm::Original, dir.path());
        let outcome = compare_algorithms(&cfg, &cfg).unwrap();
        assert_eq!(outcome.record.better_mean, BetterMean::Tie);
        assert_eq!(outcome.record.mean_ratio, Some(1.0));
        assert_eq!(outcome.record.rank_sum.p_value, 1.0);
        assert_eq!(outcome.record.rank_sum.z_score, 0.0);
    }

    #[test]
    fn mismatched_problems_refuse_to_compare() {
        let dir = tempfile::tempdir().unwrap();
        let a = tiny_config(Algorithm::Original, dir.path());
        let b = ExperimentConfig::new("sphere", 30, Algorithm::Proposed)
            .unwrap()
            .with_runs(3)
            .unwrap()
            .with_output_dir(dir.path());
        assert!(matches!(
            compare_algorithms(&a, &b),
            Err(Error::ComparisonMismatch { .. })
        ));
        let c = tiny_config(Algorithm::Proposed, dir.path())
            .with_runs(4)
            .unwrap();
        assert!(matches!(
            compare_algorithms(&a, &c),
            Err(Error::ComparisonMismatch { .. })
        ));
    }

    #[test]
    fn emitted_tables_have_one_header_and_two_rows_per_record() {
        let dir = tempfile::tempdir().unwrap();
        let a = tiny_config(Algorithm::Original, dir.path());
        let b = tiny_config(Algorithm::Proposed, dir.path());
        let outcome = compare_algorithms(&a, &b).unwrap();
        let path = dir.path().join("table.csv");
        emit_table(std::slice::from_ref(&outcome.record), &path).unwrap();
        let table = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], TABLE_HEADER);
        assert!(lines[1].starts_with("sphere,f4,original,10,"));
        assert!(lines[2].starts_with("sphere,f4,proposed,10,"));
        // Every numeric cell uses the scientific style.
        for line in &lines[1..] {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells.len(), 9);
            for cell in &cells[4..] {
                assert!(
                    cell.contains('E') && (cell.contains("E+") || cell.contains("E-")),
                    "cell {cell} is not in scientific notation"
                );
            }
        }
        assert!(emit_table(&[], &path).is_err());
    }

    #[test]
    fn comparison_records_serialize_with_their_provenance_label() {
        let dir = tempfile::tempdir().unwrap();
        let a = tiny_config(Algorithm::Original, dir.path());
        let outcome = compare_algorithms(&a, &a).unwrap();
        let path = dir.path().join("comparison.json");
        write_comparison_record(&path, &outcome.record).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("artifact extension"));
        assert!(text.contains("\"better_mean\": \"tie\""));
    }
}

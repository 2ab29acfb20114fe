//! End-to-end tests that drive the compiled `pollen` binary the way a user
//! would: subcommands, flags, config files, exit codes, and emitted files.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn pollen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pollen"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr should be UTF-8")
}

fn run_ok(args: &[&str]) -> String {
    let output = pollen(args);
    assert!(
        output.status.success(),
        "expected success for {args:?}; stderr:\n{}",
        stderr_of(&output)
    );
    stdout_of(&output)
}

#[test]
fn single_runs_print_the_best_solution() {
    let stdout = run_ok(&[
        "run",
        "--function",
        "sphere",
        "--dim",
        "10",
        "--pop",
        "10",
        "--generations",
        "120",
        "--seed",
        "7",
    ]);
    assert!(stdout.contains("function: sphere (f4), d = 10"), "{stdout}");
    assert!(stdout.contains("seed: 7"), "{stdout}");
    assert!(stdout.contains("best fitness: "), "{stdout}");
    assert!(stdout.contains("best position: ["), "{stdout}");
    assert!(stdout.contains("evaluations used: 1210"), "{stdout}");
}

#[test]
fn unknown_functions_fail_listing_the_valid_names() {
    let output = pollen(&["run", "--function", "nosuch"]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = stderr_of(&output);
    for name in [
        "himmelblau",
        "griewank",
        "step",
        "sphere",
        "rosenbrock",
        "zakharov",
    ] {
        assert!(stderr.contains(name), "missing {name} in: {stderr}");
    }
}

#[test]
fn invalid_probabilities_name_the_offending_field() {
    let output = pollen(&["run", "--function", "sphere", "--p", "1.5"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(
        stderr_of(&output).contains("switch probability"),
        "{}",
        stderr_of(&output)
    );
}

#[test]
fn missing_function_is_a_validation_error() {
    let output = pollen(&["run", "--dim", "10"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(
        stderr_of(&output).contains("function is required"),
        "{}",
        stderr_of(&output)
    );
}

#[test]
fn conflicting_probability_flags_are_usage_errors() {
    let output = pollen(&[
        "run",
        "--function",
        "sphere",
        "--p",
        "0.5",
        "--schedule",
        "10:0.5",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn unknown_subcommands_are_usage_errors() {
    let output = pollen(&["optimize"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("Usage"), "{}", stderr_of(&output));
}

#[test]
fn list_functions_prints_the_whole_registry() {
    let stdout = run_ok(&["list-functions"]);
    assert_eq!(stdout.lines().count(), 6);
    for (label, name) in [
        ("f1", "himmelblau"),
        ("f2", "griewank"),
        ("f3", "step"),
        ("f4", "sphere"),
        ("f5", "rosenbrock"),
        ("f6", "zakharov"),
    ] {
        let line = stdout
            .lines()
            .find(|l| l.starts_with(label))
            .unwrap_or_else(|| panic!("no {label} line in: {stdout}"));
        assert!(line.contains(name), "{line}");
        assert!(line.contains("bounds ["), "{line}");
    }
}

#[test]
fn experiments_write_the_four_artifacts() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("results");
    let stdout = run_ok(&[
        "experiment",
        "--function",
        "zakharov",
        "--dim",
        "10",
        "--runs",
        "2",
        "--pop",
        "8",
        "--generations",
        "40",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(stdout.contains("zakharov_10_original"), "{stdout}");
    let experiment = out.join("zakharov_10_original");
    for artifact in ["runs.json", "stats.csv", "trace.csv", "plot.svg"] {
        assert!(
            experiment.join(artifact).is_file(),
            "missing {artifact} under {}",
            experiment.display()
        );
    }
}

#[test]
fn comparisons_print_the_paired_table_and_write_records() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("cmp");
    let stdout = run_ok(&[
        "compare",
        "--function",
        "step",
        "--dim",
        "10",
        "--runs",
        "3",
        "--pop",
        "8",
        "--generations",
        "60",
        "--out",
        out.to_str().unwrap(),
    ]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(
        lines[0],
        "Function,Name,Algorithm,Dimension,Best,Worst,Mean,Median,SD"
    );
    assert!(lines[1].starts_with("step,f3,original,10,"), "{}", lines[1]);
    assert!(lines[2].starts_with("step,f3,proposed,10,"), "{}", lines[2]);
    assert!(stdout.contains("better mean: "), "{stdout}");
    assert!(stdout.contains("rank-sum: U = "), "{stdout}");

    let json_path = out.join("step_10_comparison.json");
    let csv_path = out.join("step_10_comparison.csv");
    assert!(json_path.is_file() && csv_path.is_file());

    let record: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(record["function"], "step");
    assert_eq!(record["dimension"], 10);
    let p = record["rank_sum"]["p_value"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&p), "p-value out of range: {p}");
    let csv = fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().count(), 3);
}

fn count_entries(dir: &Path, predicate: impl Fn(&str) -> bool) -> usize {
    fs::read_dir(dir)
        .unwrap()
        .filter(|entry| predicate(&entry.as_ref().unwrap().file_name().to_string_lossy()))
        .count()
}

#[test]
fn replication_grids_cover_every_cell() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("grid");
    let stdout = run_ok(&[
        "replicate",
        "--runs",
        "1",
        "--pop",
        "6",
        "--workers",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(stdout.contains("replicated 18 comparisons (1 runs per cell)"), "{stdout}");

    let table = fs::read_to_string(out.join("table.csv")).unwrap();
    assert_eq!(table.lines().count(), 37, "header plus two rows per cell");

    let figures = count_entries(&out, |name| name.ends_with("_convergence.svg"));
    assert_eq!(figures, 6);
    let experiments = count_entries(&out, |name| {
        name.ends_with("_original") || name.ends_with("_proposed")
    });
    assert_eq!(experiments, 36);
}

#[test]
fn flags_override_config_files_which_override_defaults() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("run.toml");
    fs::write(
        &path,
        "schema_version = 1\nfunction = \"sphere\"\ndimension = 30\npopulation = 8\ngenerations = 50\nseed = 9\n",
    )
    .unwrap();
    let stdout = run_ok(&["run", "--config", path.to_str().unwrap(), "--dim", "10"]);
    assert!(stdout.contains("function: sphere (f4), d = 10"), "{stdout}");
    assert!(stdout.contains("seed: 9"), "{stdout}");
    assert!(stdout.contains("evaluations used: 408"), "{stdout}");
}

#[test]
fn config_files_without_schema_version_are_refused() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    fs::write(&path, "function = \"sphere\"\n").unwrap();
    let output = pollen(&["run", "--config", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(
        stderr_of(&output).contains("schema_version"),
        "{}",
        stderr_of(&output)
    );
}

#[test]
fn unknown_config_keys_are_refused() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("typo.toml");
    fs::write(&path, "schema_version = 1\npopulaton = 8\n").unwrap();
    let output = pollen(&["run", "--function", "sphere", "--config", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(
        stderr_of(&output).contains("populaton"),
        "{}",
        stderr_of(&output)
    );
}

//! Continuous black-box minimization with flower-pollination dynamics.
//!
//! The crate has three layers:
//!
//! * **Engine** ([`fpa`], [`levy`], [`bounds`], [`swarm`], [`rng`]) — a
//!   population of candidate positions alternates between Lévy-flight global
//!   steps toward the best-known position and local difference steps between
//!   random peers, keeping a candidate only when it strictly improves. The
//!   switch between the two moves is governed by a probability that is either
//!   fixed (classic behavior, default 0.8) or looked up from a
//!   dimension-keyed schedule (the proposed variant: 0.5 / 0.2 / 0.1 at
//!   d = 10 / 30 / 50).
//! * **Benchmarks** ([`benchmarks`]) — six classic test functions
//!   (`himmelblau`, `griewank`, `step`, `sphere`, `rosenbrock`, `zakharov`)
//!   with their standard boxes, labels `f1`…`f6`, and known minima where a
//!   closed form exists. All evaluators use compensated summation.
//! * **Harness** ([`harness`]) — multi-run experiments with deterministic
//!   per-run seeds derived from a master seed, population-divisor summary
//!   statistics, convergence-trace aggregation, paired algorithm comparisons
//!   with a rank-sum significance indicator, delimiter-separated tables in
//!   three-significant-digit scientific notation, and self-contained SVG
//!   convergence figures.
//!
//! Every run is reproducible: the same configuration and seed produce
//! bit-identical results regardless of worker count, because per-run seeds
//! are derived by a fixed splitting function and aggregation sorts its
//! inputs.
//!
//! ```
//! use pollen_core::benchmarks::registry_lookup;
//! use pollen_core::fpa::{run, FpaConfig};
//!
//! let function = registry_lookup("sphere", 10).unwrap();
//! let config = FpaConfig::new(function, 200, 42).unwrap();
//! let result = run(&config);
//! assert!(result.best_fitness() < 1.0);
//! ```

pub mod benchmarks;
pub mod bounds;
pub mod error;
pub mod fpa;
pub mod harness;
pub mod levy;
mod numeric;
pub mod rng;
pub mod swarm;

pub use benchmarks::{registry_lookup, registry_lookup_with, BenchmarkFunction, FUNCTION_NAMES};
pub use bounds::Bounds;
pub use error::{Error, Result};
pub use fpa::{run, run_improved, Algorithm, FpaConfig, RunResult, SwitchProbabilitySchedule};
pub use harness::{run_experiment, ExperimentConfig, ExperimentOutcome};
pub use levy::{levy_step, mantegna_sigma, LevyConfig};
pub use rng::{derive_seed, RngStream};
pub use swarm::{Pollen, Population};

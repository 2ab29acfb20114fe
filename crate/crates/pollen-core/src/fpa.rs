//! The pollination engine.
//!
//! Two entry points share one generation loop. [`run`] is the classic
//! algorithm: every member, every generation, flips one biased coin — with
//! probability `p` it takes a global, Lévy-scaled step toward the swarm best,
//! otherwise a local step along the difference of two random peers. [`run_improved`]
//! is the variant under study: identical dynamics, but `p` is resolved from a
//! dimension-keyed [`SwitchProbabilitySchedule`] instead of being a constant.
//!
//! Draw order is part of the contract (results are bit-reproducible per
//! seed): initialization consumes one uniform per coordinate in member-major
//! order; each member update consumes one uniform for the branch coin, then
//! either a d-coordinate Lévy step (global) or the two peer indices followed
//! by the ε draw(s) (local). Members are updated in index order, in place, so
//! later members can be paired with already-moved peers within the same
//! sweep; the best used for global steps stays frozen until the sweep ends.

use serde::Serialize;

use crate::benchmarks::BenchmarkFunction;
use crate::error::{Error, Result};
use crate::levy::{levy_step, LevyConfig, DEFAULT_LEVY_EXPONENT};
use crate::rng::RngStream;
use crate::swarm::{Pollen, Population};

/// Constant switch probability of the classic algorithm.
pub const DEFAULT_SWITCH_PROBABILITY: f64 = 0.8;

/// Default number of members in the swarm.
pub const DEFAULT_POPULATION_SIZE: usize = 50;

/// Default scale applied to global steps (the raw Lévy step is used as-is).
pub const DEFAULT_STEP_SCALE: f64 = 1.0;

/// Which entry point produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Constant switch probability.
    Original,
    /// Dimension-keyed switch probability schedule.
    Proposed,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algorithm::Original => write!(f, "original"),
            Algorithm::Proposed => write!(f, "proposed"),
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "original" => Ok(Algorithm::Original),
            "proposed" => Ok(Algorithm::Proposed),
            other => Err(Error::InvalidParameter {
                field: "algorithm",
                message: format!("expected \"original\" or \"proposed\", got \"{other}\""),
            }),
        }
    }
}

/// Dimension-keyed switch probabilities: a small set of (dimension → p)
/// anchors, looked up by nearest dimension with midpoints resolved to the
/// lower anchor. Probabilities must not increase with dimension — higher
/// dimensions get more local search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwitchProbabilitySchedule {
    anchors: Vec<(usize, f64)>,
}

impl SwitchProbabilitySchedule {
    /// The schedule under study: {10 → 0.5, 30 → 0.2, 50 → 0.1}.
    pub fn standard() -> Self {
        Self {
            anchors: vec![(10, 0.5), (30, 0.2), (50, 0.1)],
        }
    }

    /// Builds a schedule from (dimension, probability) anchors.
    ///
    /// Requires at least one anchor, distinct dimensions ≥ 1, probabilities
    /// strictly in (0, 1], and probabilities non-increasing in dimension.
    pub fn new(mut anchors: Vec<(usize, f64)>) -> Result<Self> {
        if anchors.is_empty() {
            return Err(Error::InvalidParameter {
                field: "schedule anchors",
                message: "at least one (dimension, probability) anchor is required".into(),
            });
        }
        anchors.sort_by_key(|&(dim, _)| dim);
        for window in anchors.windows(2) {
            if window[0].0 == window[1].0 {
                return Err(Error::InvalidParameter {
                    field: "schedule anchors",
                    message: format!("dimension {} appears twice", window[0].0),
                });
            }
            if window[1].1 > window[0].1 {
                return Err(Error::InvalidParameter {
                    field: "schedule anchors",
                    message: format!(
                        "probability must not increase with dimension: \
                         {} at d = {} but {} at d = {}",
                        window[0].1, window[0].0, window[1].1, window[1].0
                    ),
                });
            }
        }
        for &(dim, p) in &anchors {
            if dim == 0 {
                return Err(Error::InvalidParameter {
                    field: "schedule anchors",
                    message: "anchor dimensions must be at least 1".into(),
                });
            }
            if !p.is_finite() || p <= 0.0 || p > 1.0 {
                return Err(Error::InvalidParameter {
                    field: "schedule anchors",
                    message: format!("probability at d = {dim} must lie in (0, 1], got {p}"),
                });
            }
        }
        Ok(Self { anchors })
    }

    /// The anchors, sorted by dimension.
    pub fn anchors(&self) -> &[(usize, f64)] {
        &self.anchors
    }

    /// Resolves the probability for a dimension: exact anchors return their
    /// value; anything else takes the nearest anchor, with exact midpoints
    /// assigned to the lower-dimension anchor.
    pub fn switch_probability_for(&self, dimension: usize) -> f64 {
        let mut choice = self.anchors[0];
        for &(dim, p) in &self.anchors[1..] {
            let current = dimension.abs_diff(choice.0);
            let candidate = dimension.abs_diff(dim);
            // Strict improvement only: on a tie the lower anchor (seen
            // first — anchors are sorted ascending) wins.
            if candidate < current {
                choice = (dim, p);
            }
        }
        choice.1
    }
}

impl Default for SwitchProbabilitySchedule {
    fn default() -> Self {
        Self::standard()
    }
}

/// Validated engine configuration. Built with [`FpaConfig::new`] and adjusted
/// through the `with_*` methods, each of which validates immediately.
#[derive(Debug, Clone)]
pub struct FpaConfig {
    function: BenchmarkFunction,
    population_size: usize,
    generations: usize,
    switch_probability: f64,
    levy: LevyConfig,
    step_scale: f64,
    seed: u64,
    away_from_best: bool,
    epsilon_per_coordinate: bool,
}

impl FpaConfig {
    /// Engine defaults: 50 members, p = 0.8, λ = 1.5, γ = 1.0, steps toward
    /// the best, one scalar ε per local update.
    pub fn new(function: BenchmarkFunction, generations: usize, seed: u64) -> Result<Self> {
        if generations == 0 {
            return Err(Error::InvalidParameter {
                field: "generations",
                message: "at least one generation is required".into(),
            });
        }
        let levy = LevyConfig::new(DEFAULT_LEVY_EXPONENT, function.dimension())?;
        Ok(Self {
            function,
            population_size: DEFAULT_POPULATION_SIZE,
            generations,
            switch_probability: DEFAULT_SWITCH_PROBABILITY,
            levy,
            step_scale: DEFAULT_STEP_SCALE,
            seed,
            away_from_best: false,
            epsilon_per_coordinate: false,
        })
    }

    /// Sets the swarm size (minimum 2 — local steps need two distinct peers).
    pub fn with_population_size(mut self, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::PopulationTooSmall { size: n, minimum: 2 });
        }
        self.population_size = n;
        Ok(self)
    }

    /// Sets the constant switch probability, in [0, 1].
    pub fn with_switch_probability(mut self, p: f64) -> Result<Self> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter {
                field: "switch probability",
                message: format!("must lie in [0, 1], got {p}"),
            });
        }
        self.switch_probability = p;
        Ok(self)
    }

    /// Sets the Lévy tail exponent, in (0, 2].
    pub fn with_levy_exponent(mut self, lambda: f64) -> Result<Self> {
        self.levy = LevyConfig::new(lambda, self.function.dimension())?;
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

    /// Flips the global-step direction to point away from the best solution
    /// (the alternative sign convention; off by default).
    pub fn with_away_from_best(mut self, away: bool) -> Self {
        self.away_from_best = away;
        self
    }

    /// Draws one ε per coordinate in local steps instead of a single scalar
    /// (sensitivity-study option; off by default).
    pub fn with_epsilon_per_coordinate(mut self, per_coordinate: bool) -> Self {
        self.epsilon_per_coordinate = per_coordinate;
        self
    }

    /// The objective this config optimizes.
    pub fn function(&self) -> &BenchmarkFunction {
        &self.function
    }

    /// Swarm size n.
    pub fn population_size(&self) -> usize {
        self.population_size
    }

    /// Generation count.
    pub fn generations(&self) -> usize {
        self.generations
    }

    /// Constant switch probability p.
    pub fn switch_probability(&self) -> f64 {
        self.switch_probability
    }

    /// Lévy tail exponent λ.
    pub fn levy_exponent(&self) -> f64 {
        self.levy.exponent()
    }

    /// Global step scale γ.
    pub fn step_scale(&self) -> f64 {
        self.step_scale
    }

    /// Stream seed.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Replaces the stream seed (used by batch drivers deriving one seed per
    /// run).
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Whether global steps point away from the best solution.
    pub fn away_from_best(&self) -> bool {
        self.away_from_best
    }

    /// Whether local steps draw ε per coordinate.
    pub fn epsilon_per_coordinate(&self) -> bool {
        self.epsilon_per_coordinate
    }
}

/// Everything one seeded run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    algorithm: Algorithm,
    seed: u64,
    switch_probability: f64,
    best_fitness: f64,
    best_position: Vec<f64>,
    fitness_trace: Vec<f64>,
    evaluations_used: u64,
    global_branch_uses: u64,
}

impl RunResult {
    /// Which entry point produced this result.
    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    /// Seed the run's stream was built from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The switch probability actually used (schedule-resolved for the
    /// proposed variant).
    pub fn switch_probability(&self) -> f64 {
        self.switch_probability
    }

    /// Lowest objective value found.
    pub fn best_fitness(&self) -> f64 {
        self.best_fitness
    }

    /// Position achieving [`best_fitness`](Self::best_fitness).
    pub fn best_position(&self) -> &[f64] {
        &self.best_position
    }

    /// Best-so-far objective value after each generation; monotone
    /// non-increasing, ends at `best_fitness`.
    pub fn fitness_trace(&self) -> &[f64] {
        &self.fitness_trace
    }

    /// Objective evaluations consumed: n · (1 + generations), exactly.
    pub fn evaluations_used(&self) -> u64 {
        self.evaluations_used
    }

    /// How many member updates took the global branch (out of
    /// n · generations total updates).
    pub fn global_branch_uses(&self) -> u64 {
        self.global_branch_uses
    }
}

/// Samples the initial swarm uniformly inside the objective's box and
/// evaluates every member. Consumes one uniform per coordinate in
/// member-major order.
pub fn initialize_population(cfg: &FpaConfig, rng: &mut RngStream) -> Population {
    let dimension = cfg.function.dimension();
    let bounds = cfg.function.bounds();
    let members: Vec<Pollen> = (0..cfg.population_size)
        .map(|_| {
            let position: Vec<f64> = (0..dimension).map(|_| bounds.sample_uniform(rng)).collect();
            let mut member = Pollen::new(position);
            member.evaluate_with(|x| cfg.function.evaluate(x));
            member
        })
        .collect();
    Population::new(members).expect("config validation guarantees a well-formed population")
}

/// One global-pollination candidate: `clamp(x + γ · L ⊙ (g* − x))` with a
/// fresh d-coordinate Lévy step `L`. With the away-from-best flag the
/// parenthesis flips to `(x − g*)`. The candidate's fitness is not evaluated.
pub fn global_pollination(
    current: &Pollen,
    best: &Pollen,
    cfg: &FpaConfig,
    rng: &mut RngStream,
) -> Pollen {
    debug_assert_eq!(current.dimension(), best.dimension());
    let steps = levy_step(rng, &cfg.levy);
    let direction = if cfg.away_from_best { -1.0 } else { 1.0 };
    let mut position: Vec<f64> = current
        .position()
        .iter()
        .zip(best.position())
        .zip(&steps)
        .map(|((&x, &g), &step)| x + cfg.step_scale * step * direction * (g - x))
        .collect();
    cfg.function.bounds().clamp_in_place(&mut position);
    Pollen::new(position)
}

/// One local-pollination candidate for member `current_index`:
/// `clamp(x + ε · (x_j − x_k))` with ε uniform in [0, 1) — one scalar draw,
/// or one per coordinate when the config says so. The peer indices must be
/// distinct; they may equal `current_index`. The candidate's fitness is not
/// evaluated.
pub fn local_pollination(
    population: &Population,
    current_index: usize,
    peers: (usize, usize),
    cfg: &FpaConfig,
    rng: &mut RngStream,
) -> Result<Pollen> {
    let (j, k) = peers;
    if j == k {
        return Err(Error::InvalidParameter {
            field: "local pollination peers",
            message: format!("peer indices must be distinct, both were {j}"),
        });
    }
    let current = population.member(current_index).position();
    let peer_j = population.member(j).position();
    let peer_k = population.member(k).position();
    let mut position: Vec<f64> = if cfg.epsilon_per_coordinate {
        current
            .iter()
            .zip(peer_j.iter().zip(peer_k))
            .map(|(&x, (&a, &b))| x + rng.uniform() * (a - b))
            .collect()
    } else {
        let epsilon = rng.uniform();
        current
            .iter()
            .zip(peer_j.iter().zip(peer_k))
            .map(|(&x, (&a, &b))| x + epsilon * (a - b))
            .collect()
    };
    cfg.function.bounds().clamp_in_place(&mut position);
    Ok(Pollen::new(position))
}

/// Advances the swarm one generation in place and returns how many members
/// took the global branch.
///
/// Members are processed in index order: draw r uniform; r < p takes the
/// global branch, otherwise the local branch with two distinct peers drawn
/// from the whole population. Each candidate is evaluated once and replaces
/// its member only on strict improvement. The best solution other members
/// steer toward stays frozen for the whole sweep and is refreshed at the end.
pub fn step_generation(population: &mut Population, cfg: &FpaConfig, rng: &mut RngStream) -> u64 {
    let frozen_best = population.best().clone();
    let mut global_uses = 0;
    for index in 0..population.size() {
        let mut candidate = if rng.uniform() < cfg.switch_probability {
            global_uses += 1;
            global_pollination(population.member(index), &frozen_best, cfg, rng)
        } else {
            let peers = rng
                .pick_two_distinct(population.size())
                .expect("population size is validated to be at least 2");
            local_pollination(population, index, peers, cfg, rng)
                .expect("peer indices drawn distinct")
        };
        candidate.evaluate_with(|x| cfg.function.evaluate(x));
        population.replace_if_better(index, candidate);
    }
    population.refresh_best();
    debug_assert!(
        population
            .members()
            .iter()
            .all(|m| cfg.function.bounds().contains_all(m.position())),
        "a member escaped the search box"
    );
    global_uses
}

fn run_with_algorithm(cfg: &FpaConfig, algorithm: Algorithm) -> RunResult {
    let mut rng = RngStream::new(cfg.seed);
    let mut population = initialize_population(cfg, &mut rng);
    let mut trace = Vec::with_capacity(cfg.generations);
    let mut global_branch_uses = 0;
    for _ in 0..cfg.generations {
        global_branch_uses += step_generation(&mut population, cfg, &mut rng);
        trace.push(population.best().expect_fitness());
    }
    let best = population.best();
    RunResult {
        algorithm,
        seed: cfg.seed,
        switch_probability: cfg.switch_probability,
        best_fitness: best.expect_fitness(),
        best_position: best.position().to_vec(),
        fitness_trace: trace,
        evaluations_used: (cfg.population_size * (1 + cfg.generations)) as u64,
        global_branch_uses,
    }
}

/// Runs the classic algorithm: constant switch probability from the config.
pub fn run(cfg: &FpaConfig) -> RunResult {
    run_with_algorithm(cfg, Algorithm::Original)
}

/// Runs the schedule variant: the config's constant probability is replaced
/// by the schedule's value for the objective's dimension; everything else —
/// including the draw sequence for a given seed — matches [`run`] exactly.
pub fn run_improved(cfg: &FpaConfig, schedule: &SwitchProbabilitySchedule) -> RunResult {
    let p = schedule.switch_probability_for(cfg.function.dimension());
    let resolved = cfg
        .clone()
        .with_switch_probability(p)
        .expect("schedule probabilities are validated to lie in (0, 1]");
    run_with_algorithm(&resolved, Algorithm::Proposed)
}

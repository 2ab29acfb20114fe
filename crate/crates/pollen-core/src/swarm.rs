//! Candidate solutions ("pollen") and the population that carries them.

use crate::error::{Error, Result};

/// One candidate solution: a position plus a lazily evaluated fitness cache.
///
/// Fitness is computed at most once per position; constructing a new
/// `Pollen` (the only way a position changes) starts with an empty cache, so
/// evaluation counts are a meaningful budget.
#[derive(Debug, Clone, PartialEq)]
pub struct Pollen {
    position: Vec<f64>,
    fitness: Option<f64>,
}

impl Pollen {
    /// Wraps a position with no fitness evaluated yet.
    pub fn new(position: Vec<f64>) -> Self {
        Self {
            position,
            fitness: None,
        }
    }

    /// The position vector.
    pub fn position(&self) -> &[f64] {
        &self.position
    }

    /// Problem dimension.
    pub fn dimension(&self) -> usize {
        self.position.len()
    }

    /// Cached fitness, if evaluated.
    pub fn fitness(&self) -> Option<f64> {
        self.fitness
    }

    /// Returns the cached fitness or evaluates and caches it.
    pub fn evaluate_with<F>(&mut self, objective: F) -> f64
    where
        F: FnOnce(&[f64]) -> f64,
    {
        match self.fitness {
            Some(v) => v,
            None => {
                let v = objective(&self.position);
                self.fitness = Some(v);
                v
            }
        }
    }

    /// The cached fitness; panics if the member was never evaluated.
    pub fn expect_fitness(&self) -> f64 {
        self.fitness
            .expect("pollen fitness requested before evaluation")
    }
}

/// The swarm: an ordered list of members plus the tracked global best.
///
/// Between generations the best member is a copy of the fittest member
/// (minimization: lowest fitness, earliest index on ties). During a
/// generation sweep the members may improve past it; [`Population::refresh_best`]
/// restores the invariant after the sweep.
#[derive(Debug, Clone)]
pub struct Population {
    members: Vec<Pollen>,
    best: Pollen,
}

impl Population {
    /// Builds a population from evaluated members.
    ///
    /// Requires at least two members (local pollination draws two distinct
    /// peers) and a cached fitness on every member.
    pub fn new(members: Vec<Pollen>) -> Result<Self> {
        if members.len() < 2 {
            return Err(Error::PopulationTooSmall {
                size: members.len(),
                minimum: 2,
            });
        }
        if members.iter().any(|m| m.fitness().is_none()) {
            return Err(Error::InvalidParameter {
                field: "population members",
                message: "every member must be evaluated before forming a population".into(),
            });
        }
        let best = Self::fittest(&members).clone();
        Ok(Self { members, best })
    }

    /// Number of members.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// All members in index order.
    pub fn members(&self) -> &[Pollen] {
        &self.members
    }

    /// One member by index.
    pub fn member(&self, index: usize) -> &Pollen {
        &self.members[index]
    }

    /// The tracked global best.
    pub fn best(&self) -> &Pollen {
        &self.best
    }

    /// Replaces member `index` only if the candidate is strictly fitter.
    ///
    /// Ties keep the incumbent. Returns whether the replacement happened.
    /// The candidate must already be evaluated.
    pub(crate) fn replace_if_better(&mut self, index: usize, candidate: Pollen) -> bool {
        let candidate_fitness = candidate.expect_fitness();
        if candidate_fitness < self.members[index].expect_fitness() {
            self.members[index] = candidate;
            true
        } else {
            false
        }
    }

    /// Re-copies the fittest member into the tracked best.
    ///
    /// Called once per generation, after the full member sweep, so every
    /// update within one generation references the same best.
    pub(crate) fn refresh_best(&mut self) {
        let fittest = Self::fittest(&self.members);
        debug_assert!(
            fittest.expect_fitness() <= self.best.expect_fitness(),
            "greedy replacement cannot lose the best member"
        );
        self.best = fittest.clone();
    }

    fn fittest(members: &[Pollen]) -> &Pollen {
        members
            .iter()
            .min_by(|a, b| {
                a.expect_fitness()
                    .partial_cmp(&b.expect_fitness())
                    .expect("fitness values are never NaN")
            })
            .expect("population is never empty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn evaluated(position: Vec<f64>, fitness: f64) -> Pollen {
        let mut p = Pollen::new(position);
        p.evaluate_with(|_| fitness);
        p
    }

    #[test]
    fn fitness_is_cached_after_first_evaluation() {
        let mut calls = 0;
        let mut p = Pollen::new(vec![1.0, 2.0]);
        for _ in 0..3 {
            p.evaluate_with(|x| {
                calls += 1;
                x.iter().sum()
            });
        }
        assert_eq!(calls, 1);
        assert_eq!(p.fitness(), Some(3.0));
    }

    #[test]
    fn population_requires_two_members() {
        let err = Population::new(vec![evaluated(vec![0.0], 0.0)]).unwrap_err();
        assert!(matches!(err, Error::PopulationTooSmall { size: 1, minimum: 2 }));
    }

    #[test]
    fn population_requires_evaluated_members() {
        let err =
            Population::new(vec![evaluated(vec![0.0], 0.0), Pollen::new(vec![1.0])]).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { .. }));
    }

    #[test]
    fn best_is_the_minimum_of_two_members() {
        let pop = Population::new(vec![
            evaluated(vec![1.0], 4.0),
            evaluated(vec![2.0], -1.5),
        ])
        .unwrap();
        assert_eq!(pop.best().expect_fitness(), -1.5);
        assert_eq!(pop.best().position(), &[2.0]);
    }

    #[test]
    fn replacement_is_strictly_greedy() {
        let mut pop = Population::new(vec![
            evaluated(vec![0.0], 1.0),
            evaluated(vec![1.0], 2.0),
        ])
        .unwrap();
        // Equal fitness keeps the incumbent.
        assert!(!pop.replace_if_better(0, evaluated(vec![9.0], 1.0)));
        assert_eq!(pop.member(0).position(), &[0.0]);
        // Strictly better replaces.
        assert!(pop.replace_if_better(0, evaluated(vec![3.0], 0.5)));
        assert_eq!(pop.member(0).position(), &[3.0]);
    }

    #[test]
    fn refresh_best_prefers_the_earliest_minimum() {
        let mut pop = Population::new(vec![
            evaluated(vec![0.0], 5.0),
            evaluated(vec![1.0], 5.0),
            evaluated(vec![2.0], 7.0),
        ])
        .unwrap();
        pop.replace_if_better(2, evaluated(vec![9.0], 5.0 - 1e-9));
        pop.refresh_best();
        assert_eq!(pop.best().position(), &[9.0]);
    }
}

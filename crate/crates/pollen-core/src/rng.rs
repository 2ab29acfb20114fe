//! Deterministic randomness contract shared by the whole crate.
//!
//! All stochastic code draws from [`RngStream`], a thin wrapper over the
//! ChaCha8 counter-based generator. The generator family is fixed so that a
//! seed pins the entire sequence of draws, which in turn pins every run
//! output bit-for-bit within one build. The draw primitives are deliberately
//! few and their stream consumption is documented, so tests can replay a
//! twin stream and predict results exactly:
//!
//! * [`RngStream::uniform`] — one generator step.
//! * [`RngStream::normal`] — exactly two generator steps (Box–Muller, no
//!   cached spare).
//! * [`RngStream::index`] — one generator step.
//! * [`RngStream::pick_two_distinct`] — one step for the first index, one or
//!   more for the second (redrawn until distinct).
//!
//! Independent runs of an experiment each own a private stream seeded via
//! [`derive_seed`], so parallel and serial execution produce identical
//! per-run results and a longer experiment contains a shorter one as a
//! prefix.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// 2⁻⁵³, the spacing of the uniform grid produced by [`RngStream::uniform`].
const UNIFORM_SCALE: f64 = 1.0 / (1u64 << 53) as f64;

/// Deterministic random stream: a seed plus opaque generator state.
///
/// Identical seeds yield identical sequences of draws on every platform.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    gen: ChaCha8Rng,
}

impl RngStream {
    /// Creates a stream from a 64-bit seed.
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            gen: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// The seed this stream was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Draws a uniform value in `[0, 1)`.
    ///
    /// Consumes exactly one generator step: the top 53 bits of one `u64`
    /// output scaled onto the unit interval.
    pub fn uniform(&mut self) -> f64 {
        (self.gen.next_u64() >> 11) as f64 * UNIFORM_SCALE
    }

    /// Draws a uniform value in `[lower, upper)`.
    pub fn uniform_in(&mut self, lower: f64, upper: f64) -> f64 {
        lower + self.uniform() * (upper - lower)
    }

    /// Draws a standard normal value via the Box–Muller transform.
    ///
    /// Consumes exactly two generator steps (two uniforms `a`, `b`), returning
    /// `sqrt(-2 ln(1 - a)) * cos(2π b)`. No spare variate is cached, keeping
    /// stream accounting trivial for replay tests.
    pub fn normal(&mut self) -> f64 {
        let a = self.uniform();
        let b = self.uniform();
        (-2.0 * (1.0 - a).ln()).sqrt() * (std::f64::consts::TAU * b).cos()
    }

    /// Draws an index uniformly from `0..n`.
    ///
    /// Consumes exactly one generator step: `floor(uniform() * n)`.
    ///
    /// # Panics
    ///
    /// Panics if `n` is zero.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "cannot draw an index from an empty range");
        let i = (self.uniform() * n as f64) as usize;
        debug_assert!(i < n);
        i
    }

    /// Draws two distinct indices from `0..n`, each unordered pair reachable.
    ///
    /// The first index costs one generator step; the second is redrawn until
    /// it differs from the first.
    pub fn pick_two_distinct(&mut self, n: usize) -> Result<(usize, usize)> {
        if n < 2 {
            return Err(Error::PopulationTooSmall {
                size: n,
                minimum: 2,
            });
        }
        let j = self.index(n);
        loop {
            let k = self.index(n);
            if k != j {
                return Ok((j, k));
            }
        }
    }
}

/// Derives the seed for one run of an experiment from the master seed.
///
/// This is the splitmix64 output sequence: run `i` receives the `(i+1)`-th
/// output of a splitmix64 generator seeded with `master_seed`. The mapping is
/// a fixed pure function of `(master_seed, run_index)`, so an experiment with
/// more runs contains a smaller one as a strict prefix and parallel workers
/// need no shared generator state.
pub fn derive_seed(master_seed: u64, run_index: u64) -> u64 {
    let mut z = master_seed.wrapping_add(
        run_index
            .wrapping_add(1)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15),
    );
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

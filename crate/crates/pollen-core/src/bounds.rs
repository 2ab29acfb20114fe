//! Inclusive box bounds applied uniformly to every coordinate.
//!
//! Search spaces are hypercubes: one `[lower, upper]` interval shared by all
//! coordinates. Out-of-bounds moves are handled by coordinate-wise clamping
//! after every position update; the boundary itself is a legal position.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// One inclusive `[lower, upper]` interval applied per coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    lower: f64,
    upper: f64,
}

impl Bounds {
    /// Creates bounds, requiring finite `lower < upper`.
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower < upper) {
            return Err(Error::InvalidBounds { lower, upper });
        }
        Ok(Self { lower, upper })
    }

    /// Lower edge (inclusive).
    pub fn lower(&self) -> f64 {
        self.lower
    }

    /// Upper edge (inclusive).
    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// Interval width.
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Whether a single coordinate lies within the interval (edges included).
    pub fn contains(&self, value: f64) -> bool {
        (self.lower..=self.upper).contains(&value)
    }

    /// Whether every coordinate of a position lies within the interval.
    pub fn contains_all(&self, position: &[f64]) -> bool {
        position.iter().all(|&c| self.contains(c))
    }

    /// Returns the position with every coordinate saturated into the interval.
    ///
    /// In-bounds coordinates are returned unchanged; the operation is
    /// idempotent. A NaN or infinite coordinate is rejected with its index.
    pub fn clamp(&self, position: &[f64]) -> Result<Vec<f64>> {
        if let Some(index) = position.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoordinate { index });
        }
        Ok(position
            .iter()
            .map(|&c| c.clamp(self.lower, self.upper))
            .collect())
    }

    /// Hot-path clamp used by the optimizer after each position update.
    ///
    /// Position arithmetic on finite inputs cannot produce NaN here, which is
    /// checked in debug builds rather than paid for on every update.
    pub(crate) fn clamp_in_place(&self, position: &mut [f64]) {
        for (index, c) in position.iter_mut().enumerate() {
            debug_assert!(!c.is_nan(), "coordinate {index} became NaN");
            let _ = index;
            *c = c.clamp(self.lower, self.upper);
        }
    }

    /// Draws one coordinate uniformly from `[lower, upper)`.
    pub fn sample_uniform(&self, rng: &mut RngStream) -> f64 {
        rng.uniform_in(self.lower, self.upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_intervals() {
        assert!(Bounds::new(1.0, 1.0).is_err());
        assert!(Bounds::new(5.0, -5.0).is_err());
        assert!(Bounds::new(f64::NEG_INFINITY, 0.0).is_err());
        assert!(Bounds::new(0.0, f64::NAN).is_err());
    }

    #[test]
    fn in_bounds_positions_are_unchanged() {
        let b = Bounds::new(-5.0, 5.0).unwrap();
        assert_eq!(b.clamp(&[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn out_of_bounds_coordinates_saturate() {
        let b = Bounds::new(-5.0, 5.0).unwrap();
        assert_eq!(b.clamp(&[7.2, -9.0]).unwrap(), vec![5.0, -5.0]);
    }

    #[test]
    fn boundary_is_inclusive() {
        let b = Bounds::new(-600.0, 600.0).unwrap();
        assert_eq!(b.clamp(&[-600.0]).unwrap(), vec![-600.0]);
        assert!(b.contains(-600.0) && b.contains(600.0));
    }

    #[test]
    fn non_finite_coordinates_are_named() {
        let b = Bounds::new(-1.0, 1.0).unwrap();
        match b.clamp(&[0.0, f64::NAN, 0.0]) {
            Err(Error::NonFiniteCoordinate { index }) => assert_eq!(index, 1),
            other => panic!("expected a non-finite rejection, got {other:?}"),
        }
    }

    #[test]
    fn clamp_is_idempotent() {
        let b = Bounds::new(-2.5, 3.5).unwrap();
        let once = b.clamp(&[-100.0, 0.25, 99.0]).unwrap();
        let twice = b.clamp(&once).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn sampling_stays_in_bounds() {
        let b = Bounds::new(-5.12, 5.12).unwrap();
        let mut rng = RngStream::new(11);
        for _ in 0..10_000 {
            assert!(b.contains(b.sample_uniform(&mut rng)));
        }
    }
}

//! Small numerical kernels shared by the objective functions and statistics.

/// Neumaier-compensated accumulator: tracks the rounding error of every
/// addition in a second register so long alternating-sign or widely scaled
/// sums keep close to full double precision.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    /// Adds one term, updating the compensation register with the exact
    /// rounding error of this addition.
    pub(crate) fn add(&mut self, value: f64) {
        let tentative = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - tentative) + value;
        } else {
            self.compensation += (value - tentative) + self.sum;
        }
        self.sum = tentative;
    }

    /// Final compensated total.
    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_a_term_naive_summation_destroys() {
        let mut acc = CompensatedSum::new();
        for term in [1e100, 1.0, -1e100] {
            acc.add(term);
        }
        // A plain running sum returns 0.0 here.
        assert_eq!(acc.value(), 1.0);
    }

    #[test]
    fn matches_plain_addition_on_benign_input() {
        let mut acc = CompensatedSum::new();
        for term in [0.25, 1.5, -0.75, 8.0] {
            acc.add(term);
        }
        assert_eq!(acc.value(), 9.0);
    }

    #[test]
    fn empty_sum_is_zero() {
        assert_eq!(CompensatedSum::new().value(), 0.0);
    }
}

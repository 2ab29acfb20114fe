//! The six objective functions the library ships with, plus the registry
//! that pairs each with its search box, modality, and known minimum.
//!
//! All evaluators accumulate with compensated summation so values stay
//! reliable at high dimension and near cancellation-prone zero crossings.

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

/// Coordinate of the separable quartic's minimizer (every coordinate equals
/// this value); root of 4t³ − 32t + 5 on the negative branch, frozen from a
/// 50-digit solve.
pub const HIMMELBLAU_MINIMIZER_COORDINATE: f64 = -2.903_534_027_771_177;

/// Minimum value of the separable quartic, independent of dimension because
/// the sum is averaged; frozen from the same 50-digit solve.
pub const HIMMELBLAU_MINIMUM: f64 = -78.332_331_407_542_83;

/// Dimension-averaged separable quartic, here called Himmelblau:
/// `(1/d) Σ (xᵢ⁴ − 16 xᵢ² + 5 xᵢ)`.
pub fn himmelblau(x: &[f64]) -> f64 {
    assert!(!x.is_empty(), "objective needs at least one coordinate");
    let mut acc = CompensatedSum::new();
    for &xi in x {
        let sq = xi * xi;
        acc.add(sq * sq - 16.0 * sq + 5.0 * xi);
    }
    acc.value() / x.len() as f64
}

/// Variant of [`himmelblau`] with the coordinate index multiplying the
/// quartic term: `(1/d) Σ (i·xᵢ⁴ − 16 xᵢ² + 5 xᵢ)`, i starting at 1. Its
/// minimum location and value have no simple closed form, so the registry
/// leaves them unset.
pub fn himmelblau_indexed(x: &[f64]) -> f64 {
    assert!(!x.is_empty(), "objective needs at least one coordinate");
    let mut acc = CompensatedSum::new();
    for (i, &xi) in x.iter().enumerate() {
        let sq = xi * xi;
        acc.add((i + 1) as f64 * sq * sq - 16.0 * sq + 5.0 * xi);
    }
    acc.value() / x.len() as f64
}

/// Griewank: `1 + Σ xᵢ²/4000 − Π cos(xᵢ/√i)`, i starting at 1.
pub fn griewank(x: &[f64]) -> f64 {
    assert!(!x.is_empty(), "objective needs at least one coordinate");
    let mut quad = CompensatedSum::new();
    let mut product = 1.0;
    for (i, &xi) in x.iter().enumerate() {
        quad.add(xi * xi / 4000.0);
        product *= (xi / ((i + 1) as f64).sqrt()).cos();
    }
    1.0 + quad.value() - product
}

/// Step: `Σ ⌊xᵢ + 0.5⌋²` — a plateaued quadratic whose minimum basin is the
/// cube (−0.5, 0.5)ᵈ.
pub fn step(x: &[f64]) -> f64 {
    assert!(!x.is_empty(), "objective needs at least one coordinate");
    let mut acc = CompensatedSum::new();
    for &xi in x {
        let floored = (xi + 0.5).floor();
        acc.add(floored * floored);
    }
    acc.value()
}

/// Sphere: `Σ xᵢ²`.
pub fn sphere(x: &[f64]) -> f64 {
    assert!(!x.is_empty(), "objective needs at least one coordinate");
    let mut acc = CompensatedSum::new();
    for &xi in x {
        acc.add(xi * xi);
    }
    acc.value()
}

/// Rosenbrock: `Σᵢ₌₁^{d−1} [100 (xᵢ₊₁ − xᵢ²)² + (xᵢ − 1)²]`; needs d ≥ 2.
pub fn rosenbrock(x: &[f64]) -> f64 {
    assert!(
        x.len() >= 2,
        "the valley objective couples consecutive coordinates and needs d ≥ 2"
    );
    let mut acc = CompensatedSum::new();
    for w in x.windows(2) {
        let gap = w[1] - w[0] * w[0];
        let off = w[0] - 1.0;
        acc.add(100.0 * gap * gap + off * off);
    }
    acc.value()
}

/// Zakharov: `Σ xᵢ² + (Σ 0.5·i·xᵢ)² + (Σ 0.5·i·xᵢ)⁴`, i starting at 1.
pub fn zakharov(x: &[f64]) -> f64 {
    assert!(!x.is_empty(), "objective needs at least one coordinate");
    let mut quad = CompensatedSum::new();
    let mut weighted = CompensatedSum::new();
    for (i, &xi) in x.iter().enumerate() {
        quad.add(xi * xi);
        weighted.add(0.5 * (i + 1) as f64 * xi);
    }
    let s = weighted.value();
    let s2 = s * s;
    quad.value() + s2 + s2 * s2
}

/// Whether an objective has one basin or many.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modality {
    Unimodal,
    Multimodal,
}

impl std::fmt::Display for Modality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Modality::Unimodal => write!(f, "unimodal"),
            Modality::Multimodal => write!(f, "multimodal"),
        }
    }
}

/// One registry entry: an objective fixed to a concrete dimension, with its
/// search box and (when known in closed form) its global minimum.
#[derive(Debug, Clone)]
pub struct BenchmarkFunction {
    name: &'static str,
    label: &'static str,
    evaluator: fn(&[f64]) -> f64,
    bounds: Bounds,
    dimension: usize,
    modality: Modality,
    known_minimum_value: Option<f64>,
    known_minimizer: Option<Vec<f64>>,
}

impl BenchmarkFunction {
    /// Registry key, e.g. `"griewank"`.
    pub fn name(&self) -> &'static str {
        self.name
    }

    /// Short table label, `"f1"` through `"f6"`.
    pub fn label(&self) -> &'static str {
        self.label
    }

    /// Search box shared by every coordinate.
    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Dimension this entry was instantiated at.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// One basin or many.
    pub fn modality(&self) -> Modality {
        self.modality
    }

    /// Global minimum value, when known in closed form.
    pub fn known_minimum_value(&self) -> Option<f64> {
        self.known_minimum_value
    }

    /// Global minimizer, when known in closed form.
    pub fn known_minimizer(&self) -> Option<&[f64]> {
        self.known_minimizer.as_deref()
    }

    /// Evaluates the objective. The argument length must equal
    /// [`dimension`](Self::dimension).
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        assert_eq!(
            x.len(),
            self.dimension,
            "evaluated {} with {} coordinates but it was registered at d = {}",
            self.name,
            x.len(),
            self.dimension
        );
        (self.evaluator)(x)
    }

    /// Raw evaluator pointer, for callers that batch evaluations themselves.
    pub fn evaluator(&self) -> fn(&[f64]) -> f64 {
        self.evaluator
    }
}

/// Registry keys in table order (f1 … f6).
pub const FUNCTION_NAMES: [&str; 6] = [
    "himmelblau",
    "griewank",
    "step",
    "sphere",
    "rosenbrock",
    "zakharov",
];

/// Looks up a benchmark by registry key and instantiates it at `dimension`.
pub fn registry_lookup(name: &str, dimension: usize) -> Result<BenchmarkFunction> {
    registry_lookup_with(name, dimension, false)
}

/// Like [`registry_lookup`], but `indexed_quartic = true` swaps the first
/// entry's evaluator for [`himmelblau_indexed`] (whose minimum is unknown,
/// so the entry's closed-form fields are cleared).
pub fn registry_lookup_with(
    name: &str,
    dimension: usize,
    indexed_quartic: bool,
) -> Result<BenchmarkFunction> {
    if dimension == 0 {
        return Err(Error::InvalidDimension {
            function: name.to_string(),
            dimension,
            message: "dimension must be at least 1".into(),
        });
    }
    let origin = || Some(vec![0.0; dimension]);
    let entry = match name {
        "himmelblau" => {
            if indexed_quartic {
                BenchmarkFunction {
                    name: "himmelblau",
                    label: "f1",
                    evaluator: himmelblau_indexed,
                    bounds: Bounds::new(-5.0, 5.0)?,
                    dimension,
                    modality: Modality::Multimodal,
                    known_minimum_value: None,
                    known_minimizer: None,
                }
            } else {
                BenchmarkFunction {
                    name: "himmelblau",
                    label: "f1",
                    evaluator: himmelblau,
                    bounds: Bounds::new(-5.0, 5.0)?,
                    dimension,
                    modality: Modality::Multimodal,
                    known_minimum_value: Some(HIMMELBLAU_MINIMUM),
                    known_minimizer: Some(vec![HIMMELBLAU_MINIMIZER_COORDINATE; dimension]),
                }
            }
        }
        "griewank" => BenchmarkFunction {
            name: "griewank",
            label: "f2",
            evaluator: griewank,
            bounds: Bounds::new(-600.0, 600.0)?,
            dimension,
            modality: Modality::Multimodal,
            known_minimum_value: Some(0.0),
            known_minimizer: origin(),
        },
        "step" => BenchmarkFunction {
            name: "step",
            label: "f3",
            evaluator: step,
            bounds: Bounds::new(-100.0, 100.0)?,
            dimension,
            modality: Modality::Multimodal,
            known_minimum_value: Some(0.0),
            known_minimizer: origin(),
        },
        "sphere" => BenchmarkFunction {
            name: "sphere",
            label: "f4",
            evaluator: sphere,
            bounds: Bounds::new(-5.12, 5.12)?,
            dimension,
            modality: Modality::Unimodal,
            known_minimum_value: Some(0.0),
            known_minimizer: origin(),
        },
        "rosenbrock" => {
            if dimension < 2 {
                return Err(Error::InvalidDimension {
                    function: name.to_string(),
                    dimension,
                    message: "the valley objective couples consecutive coordinates and needs d ≥ 2"
                        .into(),
                });
            }
            BenchmarkFunction {
                name: "rosenbrock",
                label: "f5",
                evaluator: rosenbrock,
                bounds: Bounds::new(-15.0, 15.0)?,
                dimension,
                modality: Modality::Unimodal,
                known_minimum_value: Some(0.0),
                known_minimizer: Some(vec![1.0; dimension]),
            }
        }
        "zakharov" => BenchmarkFunction {
            name: "zakharov",
            label: "f6",
            evaluator: zakharov,
            bounds: Bounds::new(-5.0, 10.0)?,
            dimension,
            modality: Modality::Unimodal,
            known_minimum_value: Some(0.0),
            known_minimizer: origin(),
        },
        other => {
            return Err(Error::UnknownFunction {
                name: other.to_string(),
            })
        }
    };
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn quartic_reference_points() {
        // Each summand at 1 is 1 − 16 + 5 = −10.
        assert_abs_diff_eq!(himmelblau(&[1.0, 1.0]), -10.0, epsilon = 1e-12);
        // At the frozen minimizer the value matches the frozen minimum far
        // below the comparison tolerance used elsewhere.
        let x = [HIMMELBLAU_MINIMIZER_COORDINATE; 30];
        assert_abs_diff_eq!(himmelblau(&x), HIMMELBLAU_MINIMUM, epsilon = 1e-10);
    }

    #[test]
    fn indexed_quartic_diverges_from_plain_form_beyond_first_coordinate() {
        // i = 1 term matches the plain form; i = 2 adds one extra x⁴.
        assert_abs_diff_eq!(himmelblau_indexed(&[1.0]), himmelblau(&[1.0]), epsilon = 0.0);
        assert_abs_diff_eq!(himmelblau_indexed(&[1.0, 1.0]), -9.5, epsilon = 1e-12);
    }

    #[test]
    fn griewank_reference_points() {
        // Frozen from a 50-digit evaluation.
        assert_abs_diff_eq!(
            griewank(&[100.0, 100.0]),
            6.021_420_740_160_712,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(griewank(&[600.0]), 91.999_023_478_832_91, epsilon = 1e-12);
        assert_eq!(griewank(&[0.0; 50]), 0.0);
    }

    #[test]
    fn step_squares_the_rounded_coordinates() {
        // ⌊0.9⌋ = 0, ⌊−0.1⌋ = −1, ⌊3.0⌋ = 3.
        assert_eq!(step(&[0.4, -0.6, 2.5]), 10.0);
        assert_eq!(step(&[0.0; 10]), 0.0);
        assert_eq!(step(&[0.49, -0.5]), 0.0);
    }

    #[test]
    fn sphere_reference_points() {
        assert_eq!(sphere(&[1.0, 2.0, 3.0]), 14.0);
        assert_eq!(sphere(&[0.0; 30]), 0.0);
    }

    #[test]
    fn valley_reference_points() {
        assert_eq!(rosenbrock(&[1.0; 10]), 0.0);
        assert_eq!(rosenbrock(&[0.0, 0.0]), 1.0);
        // (100·1 + 0) + (100·1 + 1) = 201.
        assert_eq!(rosenbrock(&[1.0, 2.0, 3.0]), 201.0);
    }

    #[test]
    fn zakharov_reference_points() {
        // s = 0.5 + 1.0 = 1.5: 2 + 2.25 + 5.0625 (all exact dyadics).
        assert_eq!(zakharov(&[1.0, 1.0]), 9.3125);
        assert_eq!(zakharov(&[1.0]), 1.3125);
        assert_eq!(zakharov(&[0.0; 50]), 0.0);
    }

    #[test]
    fn registry_covers_exactly_the_published_set() {
        for (name, label) in FUNCTION_NAMES.iter().zip(["f1", "f2", "f3", "f4", "f5", "f6"]) {
            let f = registry_lookup(name, 10).unwrap();
            assert_eq!(f.name(), *name);
            assert_eq!(f.label(), label);
            assert_eq!(f.dimension(), 10);
        }
        assert!(matches!(
            registry_lookup("rastrigin", 10),
            Err(Error::UnknownFunction { .. })
        ));
    }

    #[test]
    fn registry_search_boxes_match_the_published_table() {
        let expect = [
            ("himmelblau", -5.0, 5.0),
            ("griewank", -600.0, 600.0),
            ("step", -100.0, 100.0),
            ("sphere", -5.12, 5.12),
            ("rosenbrock", -15.0, 15.0),
            ("zakharov", -5.0, 10.0),
        ];
        for (name, lo, hi) in expect {
            let f = registry_lookup(name, 10).unwrap();
            assert_eq!(f.bounds().lower(), lo, "{name} lower bound");
            assert_eq!(f.bounds().upper(), hi, "{name} upper bound");
        }
    }

    #[test]
    fn registry_modalities_match_the_published_table() {
        for name in ["himmelblau", "griewank", "step"] {
            assert_eq!(
                registry_lookup(name, 10).unwrap().modality(),
                Modality::Multimodal
            );
        }
        for name in ["sphere", "rosenbrock", "zakharov"] {
            assert_eq!(
                registry_lookup(name, 10).unwrap().modality(),
                Modality::Unimodal
            );
        }
    }

    #[test]
    fn known_minimizers_reproduce_known_minimum_values() {
        for name in FUNCTION_NAMES {
            let f = registry_lookup(name, 10).unwrap();
            let x = f.known_minimizer().expect("closed-form minimizer").to_vec();
            let value = f.evaluate(&x);
            let target = f.known_minimum_value().expect("closed-form minimum");
            assert_abs_diff_eq!(value, target, epsilon = 1e-10);
            assert!(f.bounds().contains_all(&x));
        }
    }

    #[test]
    fn dimension_validation() {
        assert!(matches!(
            registry_lookup("sphere", 0),
            Err(Error::InvalidDimension { .. })
        ));
        assert!(matches!(
            registry_lookup("rosenbrock", 1),
            Err(Error::InvalidDimension { .. })
        ));
        assert!(registry_lookup("rosenbrock", 2).is_ok());
    }

    #[test]
    fn indexed_quartic_entry_clears_closed_form_fields() {
        let f = registry_lookup_with("himmelblau", 10, true).unwrap();
        assert!(f.known_minimum_value().is_none());
        assert!(f.known_minimizer().is_none());
        assert_eq!(f.evaluate(&[1.0; 10]), himmelblau_indexed(&[1.0; 10]));
        // The flag leaves every other entry untouched.
        let g = registry_lookup_with("sphere", 10, true).unwrap();
        assert_eq!(g.known_minimum_value(), Some(0.0));
    }

    #[test]
    #[should_panic(expected = "registered at d = 3")]
    fn evaluate_rejects_wrong_length() {
        let f = registry_lookup("sphere", 3).unwrap();
        f.evaluate(&[1.0, 2.0]);
    }
}

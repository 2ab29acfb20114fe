//! Heavy-tailed step sampling for global pollination.
//!
//! Steps follow a symmetric Lévy-stable law with tail index `λ`, sampled by
//! Mantegna's construction: each coordinate is `u / |v|^(1/λ)` with
//! `u ~ Normal(0, σᵤ²)` and `v ~ Normal(0, 1)`, where the numerator scale
//! σᵤ is chosen in closed form so the ratio's tail follows `P(|S| > s) ∝ s^(-λ)`.
//! Step vectors are used raw — any global scaling is owned by the engine's
//! step-scale parameter, not by this module.

use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Conventional default tail exponent.
pub const DEFAULT_LEVY_EXPONENT: f64 = 1.5;

/// Denominator draws smaller than this magnitude are redrawn; the event has
/// negligible probability and the redraw policy is deterministic given the
/// stream.
const MIN_DENOMINATOR_MAGNITUDE: f64 = 1e-300;

/// Validated sampler configuration: tail exponent plus step-vector length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyConfig {
    exponent: f64,
    dimension: usize,
    sigma_u: f64,
    inv_exponent: f64,
}

impl LevyConfig {
    /// Creates a config, requiring `0 < λ ≤ 2` and `d ≥ 1`.
    pub fn new(exponent: f64, dimension: usize) -> Result<Self> {
        let sigma_u = mantegna_sigma(exponent)?;
        if dimension == 0 {
            return Err(Error::InvalidParameter {
                field: "levy dimension",
                message: "step vectors need at least one coordinate".into(),
            });
        }
        Ok(Self {
            exponent,
            dimension,
            sigma_u,
            inv_exponent: 1.0 / exponent,
        })
    }

    /// Tail exponent λ.
    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    /// Step-vector length d.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Numerator scale σᵤ for the configured exponent.
    pub fn sigma_u(&self) -> f64 {
        self.sigma_u
    }
}

/// Closed-form numerator scale for Mantegna's construction:
///
/// σᵤ = [Γ(1+λ)·sin(πλ/2) / (Γ((1+λ)/2)·λ·2^((λ−1)/2))]^(1/λ)
///
/// Positive and finite on the whole validity range `0 < λ ≤ 2`.
pub fn mantegna_sigma(lambda: f64) -> Result<f64> {
    if !lambda.is_finite() || lambda <= 0.0 || lambda > 2.0 {
        return Err(Error::InvalidParameter {
            field: "levy exponent",
            message: format!("must satisfy 0 < λ ≤ 2, got {lambda}"),
        });
    }
    let numerator = gamma(1.0 + lambda) * (PI * lambda / 2.0).sin();
    let denominator = gamma((1.0 + lambda) / 2.0) * lambda * 2f64.powf((lambda - 1.0) / 2.0);
    Ok((numerator / denominator).powf(1.0 / lambda))
}

/// Draws one d-dimensional Lévy step; every coordinate is independent.
///
/// At the upper endpoint `λ = 2` the stable law is exactly the Gaussian, and
/// the ratio construction degenerates (its closed-form scale vanishes while
/// the ratio keeps infinite variance), so that case samples the Gaussian
/// limit directly: one standard normal per coordinate. Everywhere else each
/// coordinate consumes one numerator normal and one denominator normal (plus
/// deterministic redraws of near-zero denominators).
pub fn levy_step(rng: &mut RngStream, cfg: &LevyConfig) -> Vec<f64> {
    if cfg.exponent == 2.0 {
        return (0..cfg.dimension).map(|_| rng.normal()).collect();
    }
    (0..cfg.dimension)
        .map(|_| {
            let u = cfg.sigma_u * rng.normal();
            let mut v = rng.normal();
            while v.abs() < MIN_DENOMINATOR_MAGNITUDE {
                v = rng.normal();
            }
            u / v.abs().powf(cfg.inv_exponent)
        })
        .collect()
}

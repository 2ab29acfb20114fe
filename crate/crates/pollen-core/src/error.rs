//! Error type shared across the crate.

use std::path::PathBuf;

use thiserror::Error;

/// Any failure surfaced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Bounds construction rejected the given interval.
    #[error("invalid bounds: lower {lower} must be finite and strictly below upper {upper}")]
    InvalidBounds { lower: f64, upper: f64 },

    /// A position contained a NaN or infinite coordinate.
    #[error("coordinate {index} is not finite")]
    NonFiniteCoordinate { index: usize },

    /// A population was too small for the requested operation.
    #[error("population needs at least {minimum} members, got {size}")]
    PopulationTooSmall { size: usize, minimum: usize },

    /// A configuration field failed validation.
    #[error("invalid {field}: {message}")]
    InvalidParameter {
        field: &'static str,
        message: String,
    },

    /// A function name was not found in the registry.
    #[error(
        "unknown function `{name}`; valid names: himmelblau, griewank, step, sphere, \
         rosenbrock, zakharov"
    )]
    UnknownFunction { name: String },

    /// A function was requested at a dimension it does not accept.
    #[error("{function} does not accept dimension {dimension}: {message}")]
    InvalidDimension {
        function: String,
        dimension: usize,
        message: String,
    },

    /// Statistics were requested over an empty sample.
    #[error("cannot aggregate an empty sample")]
    EmptySample,

    /// Traces of differing generation counts were combined.
    #[error("trace length mismatch: expected {expected} generations, found {found}")]
    TraceLengthMismatch { expected: usize, found: usize },

    /// Two experiment configs describe different problems and cannot be compared.
    #[error("comparison requires matching problem settings: {message}")]
    ComparisonMismatch { message: String },

    /// An I/O operation failed; the path gives context.
    #[error("failed to {action} `{path}`: {source}")]
    Io {
        action: &'static str,
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Serialization of an output record failed.
    #[error("failed to encode {what}: {message}")]
    Encode { what: &'static str, message: String },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

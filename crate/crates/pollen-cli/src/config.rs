//! Optional TOML configuration files.
//!
//! A config file carries `schema_version = 1` plus any subset of the
//! command-line parameters. Precedence is fixed: explicit flags override
//! file values, and file values override built-in defaults.
//! `epsilon_per_coordinate` (drawing one local mixing weight per coordinate
//! instead of one shared scalar) is available only here, not as a flag.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

/// The config schema this build reads.
pub const CONFIG_SCHEMA_VERSION: u32 = 1;

/// Every recognized key; unknown keys are rejected so typos surface.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub schema_version: Option<u32>,
    pub function: Option<String>,
    pub dimension: Option<usize>,
    pub algorithm: Option<String>,
    pub switch_probability: Option<f64>,
    pub schedule: Option<String>,
    pub population: Option<usize>,
    pub generations: Option<usize>,
    pub runs: Option<usize>,
    pub seed: Option<u64>,
    pub lambda: Option<f64>,
    pub gamma: Option<f64>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub away_from_best: Option<bool>,
    pub literal_himmelblau: Option<bool>,
    pub epsilon_per_coordinate: Option<bool>,
}

impl FileConfig {
    /// Loads a config file, or returns the all-absent default when no path
    /// was given.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        let config: FileConfig = toml::from_str(&text)
            .with_context(|| format!("parsing config file {}", path.display()))?;
        match config.schema_version {
            Some(CONFIG_SCHEMA_VERSION) => Ok(config),
            Some(version) => bail!(
                "config file {}: unsupported schema_version {version} (this build reads {CONFIG_SCHEMA_VERSION})",
                path.display()
            ),
            None => bail!(
                "config file {}: missing schema_version (this build reads {CONFIG_SCHEMA_VERSION})",
                path.display()
            ),
        }
    }
}

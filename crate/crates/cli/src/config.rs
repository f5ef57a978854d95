//! Reading and writing the TOML configuration files.
//!
//! A simulation config mirrors [`SimConfig`]: top-level `dt`,
//! `coupling_enabled` and optional `saturation`, then `[path]`,
//! `[path.circle]`, `[path.circle.center]`, `[gains]`, `[plant_x]` and
//! `[plant_y]` tables. Lengths are nm, times s, angles degrees, natural
//! frequencies rad/s.

use std::fs;
use std::path::Path;

use nanocontour::{SimConfig, SweepSpec};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::CliError;

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {}", path.display(), e.to_string().trim_end())))
}

pub fn load_sim_config(path: &Path) -> Result<SimConfig, CliError> {
    let config: SimConfig = load(path)?;
    config.validate().map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    Ok(config)
}

pub fn load_sweep_spec(path: &Path) -> Result<SweepSpec, CliError> {
    let spec: SweepSpec = load(path)?;
    spec.validate().map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    Ok(spec)
}

pub fn to_toml<T: Serialize>(value: &T) -> String {
    toml::to_string(value).expect("config types serialize to TOML")
}

pub fn parse_sim_config(text: &str) -> Result<SimConfig, CliError> {
    let config: SimConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    config.validate().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(config)
}

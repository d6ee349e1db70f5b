// Copyright 2026 The ftqc-estimator Authors
// SPDX-License-Identifier: Apache-2.0

//! Scenario files, built-in presets and the small parsers shared by the CLI.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::ModelConfig;
use crate::logical::LogicalRequirements;
use crate::model::ErrorBudget;

use super::CliError;

pub const SCENARIO_VERSION: u32 = 1;

/// Environment variable naming a model-config JSON file.
pub const MODEL_CONFIG_ENV: &str = "FTQC_MODEL_CONFIG";

/// A named algorithm with its error budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u32,
    pub name: String,
    pub logical: LogicalRequirements,
    #[serde(default)]
    pub budget: ErrorBudget,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

pub const PRESET_NAMES: [&str; 2] = ["femoco", "bitcoin-ec256"];

/// Built-in scenarios. `femoco` has no measurement depth and needs a depth
/// fraction before use.
pub fn preset(name: &str) -> Option<Scenario> {
    match name {
        "femoco" => Some(Scenario {
            version: SCENARIO_VERSION,
            name: "femoco".into(),
            logical: LogicalRequirements {
                logical_qubits: 2196,
                toffoli_count: Some(6_700_000_000),
                t_count: None,
                measurement_depth: None,
                depth_fraction: None,
            },
            budget: ErrorBudget::default(),
            notes: "FeMoco ground-state energy estimation: 2196 logical qubits and \
                    6.7e9 Toffoli gates; measurement depth given as a fraction of the \
                    gate count"
                .into(),
        }),
        "bitcoin-ec256" => Some(Scenario {
            version: SCENARIO_VERSION,
            name: "bitcoin-ec256".into(),
            logical: LogicalRequirements::with_depth(2871, 5_760_000_000, 18_800_000),
            budget: ErrorBudget::default(),
            notes: "256-bit elliptic-curve discrete logarithm: 2871 logical qubits, \
                    5.76e9 T gates, T depth 1.88e7"
                .into(),
        }),
        _ => None,
    }
}

/// Load a preset by name, or a scenario file by path.
pub fn load_scenario(name_or_path: &str) -> Result<Scenario, CliError> {
    if let Some(s) = preset(name_or_path) {
        return Ok(s);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "unknown scenario '{name_or_path}': not a preset ({}) or an existing file",
            PRESET_NAMES.join(", ")
        )));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let scenario: Scenario = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    if scenario.version != SCENARIO_VERSION {
        return Err(CliError::Usage(format!(
            "{}: unsupported scenario version {} (expected {SCENARIO_VERSION})",
            path.display(),
            scenario.version
        )));
    }
    scenario.budget.validate()?;
    if scenario.logical.measurement_depth.is_some() || scenario.logical.depth_fraction.is_some() {
        scenario.logical.validate()?;
    }
    Ok(scenario)
}

/// Model configuration from `explicit`, else the environment variable, else
/// the defaults.
pub fn load_model_config(explicit: Option<&Path>) -> Result<ModelConfig, CliError> {
    let from_env = std::env::var_os(MODEL_CONFIG_ENV).filter(|v| !v.is_empty());
    let path = match (explicit, from_env.as_deref()) {
        (Some(p), _) => p.to_path_buf(),
        (None, Some(p)) => Path::new(p).to_path_buf(),
        (None, None) => return Ok(ModelConfig::default()),
    };
    let text = std::fs::read_to_string(&path).map_err(|e| {
        CliError::Usage(format!("cannot read model config {}: {e}", path.display()))
    })?;
    let config: ModelConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("model config {}: {e}", path.display())))?;
    config.validate()?;
    Ok(config)
}

/// Seconds from a number with an optional `us`, `ms`, `s`, `h` or `day`
/// suffix.
pub fn parse_duration(text: &str) -> Result<f64, String> {
    let t = text.trim();
    let (number, scale) = [
        ("days", 86_400.0),
        ("day", 86_400.0),
        ("us", 1e-6),
        ("ms", 1e-3),
        ("h", 3_600.0),
        ("s", 1.0),
    ]
    .iter()
    .find_map(|&(suffix, scale)| t.strip_suffix(suffix).map(|n| (n, scale)))
    .unwrap_or((t, 1.0));
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| format!("invalid duration '{text}' (examples: 1e-6, 235us, 1h, 10day)"))?;
    let seconds = value * scale;
    if !(seconds > 0.0 && seconds.is_finite()) {
        return Err(format!("duration must be positive, got '{text}'"));
    }
    Ok(seconds)
}

/// A non-negative whole count, accepting scientific notation such as `40e6`.
pub fn parse_count(text: &str) -> Result<u64, String> {
    let t = text.trim();
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = t.parse().map_err(|_| format!("invalid count '{text}'"))?;
    if !(v >= 0.0 && v.fract() == 0.0 && v < u64::MAX as f64) {
        return Err(format!(
            "count must be a non-negative whole number, got '{text}'"
        ));
    }
    Ok(v as u64)
}

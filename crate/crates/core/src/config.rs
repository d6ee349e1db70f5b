// Copyright 2026 The ftqc-estimator Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factories::FactoryModel;
use crate::model::DEFAULT_MAX_DISTANCE;

pub const CONFIG_VERSION: u32 = 1;

/// Knobs for sweeps and the measurement-depth study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSettings {
    /// Log-spaced grid density.
    pub points_per_decade: u32,
    /// Below this many units an optimum is classed as oscillating.
    pub equilibrium_min_units: u64,
    /// Cap gates per layer at the logical qubit count.
    pub cap_layer_at_logical_qubits: bool,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self {
            points_per_decade: 60,
            equilibrium_min_units: 20,
            cap_layer_at_logical_qubits: true,
        }
    }
}

/// Every model constant that is not part of a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    pub version: u32,
    pub factories: FactoryModel,
    /// Upper bound for data-block distance calibration.
    pub max_code_distance: u32,
    /// Starting point of the distance/runtime fixed-point iteration.
    pub initial_distance: u32,
    pub max_fixed_point_iterations: usize,
    pub sweep: SweepSettings,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            version: CONFIG_VERSION,
            factories: FactoryModel::default(),
            max_code_distance: DEFAULT_MAX_DISTANCE,
            initial_distance: 25,
            max_fixed_point_iterations: 16,
            sweep: SweepSettings::default(),
        }
    }
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        if self.version != CONFIG_VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported model config version {} (expected {CONFIG_VERSION})",
                self.version
            )));
        }
        if self.max_code_distance < 3 {
            return Err(Error::InvalidInput(
                "max_code_distance must be at least 3".into(),
            ));
        }
        if self.initial_distance < 3 || self.initial_distance.is_multiple_of(2) {
            return Err(Error::InvalidInput(
                "initial_distance must be odd and at least 3".into(),
            ));
        }
        if self.max_fixed_point_iterations == 0 {
            return Err(Error::InvalidInput(
                "max_fixed_point_iterations must be positive".into(),
            ));
        }
        if self.sweep.points_per_decade == 0 {
            return Err(Error::InvalidInput(
                "points_per_decade must be positive".into(),
            ));
        }
        self.factories.validate()
    }
}

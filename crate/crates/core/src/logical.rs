// Copyright 2026 The ftqc-estimator Authors
// SPDX-License-Identifier: Apache-2.0

//! Logical resource requirements of an algorithm and the conversions between
//! non-Clifford gate currencies.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ceil_count;

/// Magic-state type produced by a strategy's factories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateCurrency {
    TGate,
    CczState,
}

/// What an algorithm needs from the logical layer.
///
/// The measurement depth is either given directly or as a fraction of the
/// declared non-Clifford gate count (Toffoli plus T, undecomposed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogicalRequirements {
    pub logical_qubits: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toffoli_count: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_count: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measurement_depth: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth_fraction: Option<f64>,
}

/// Four T gates per Toffoli.
pub fn toffoli_to_t_count(toffoli: u64) -> u64 {
    4 * toffoli
}

/// CCZ states consumed by `spec`; each CCZ state catalyses two T gates.
pub fn required_ccz_states(spec: &LogicalRequirements) -> u64 {
    spec.toffoli_count.unwrap_or(0) + spec.t_count.unwrap_or(0).div_ceil(2)
}

/// Average non-Clifford gates per measurement layer, in `currency` units.
pub fn t_per_layer(spec: &LogicalRequirements, currency: GateCurrency) -> Result<f64> {
    let depth = spec.measurement_depth()?;
    Ok(spec.effective_count(currency) as f64 / depth as f64)
}

impl LogicalRequirements {
    pub fn with_depth(logical_qubits: u64, t_count: u64, measurement_depth: u64) -> Self {
        Self {
            logical_qubits,
            toffoli_count: None,
            t_count: Some(t_count),
            measurement_depth: Some(measurement_depth),
            depth_fraction: None,
        }
    }

    /// Toffoli plus T gates as declared, without currency conversion.
    pub fn declared_gate_count(&self) -> u64 {
        self.toffoli_count.unwrap_or(0) + self.t_count.unwrap_or(0)
    }

    /// Gate count in the given currency: T gates (Toffoli x4) or CCZ states.
    pub fn effective_count(&self, currency: GateCurrency) -> u64 {
        match currency {
            GateCurrency::TGate => {
                toffoli_to_t_count(self.toffoli_count.unwrap_or(0)) + self.t_count.unwrap_or(0)
            }
            GateCurrency::CczState => required_ccz_states(self),
        }
    }

    /// Number of measurement layers, resolving a depth fraction if needed.
    pub fn measurement_depth(&self) -> Result<u64> {
        match (self.measurement_depth, self.depth_fraction) {
            (Some(depth), None) => Ok(depth),
            (None, Some(fraction)) => {
                Ok(ceil_count(fraction * self.declared_gate_count() as f64).max(1))
            }
            (Some(_), Some(_)) => Err(Error::InvalidInput(
                "give either measurement_depth or depth_fraction, not both".into(),
            )),
            (None, None) => Err(Error::InvalidInput(
                "measurement depth unknown: set measurement_depth or depth_fraction".into(),
            )),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.logical_qubits == 0 {
            return Err(Error::InvalidInput(
                "logical qubit count must be at least 1".into(),
            ));
        }
        if self.declared_gate_count() == 0 {
            return Err(Error::InvalidInput(
                "at least one of toffoli_count or t_count must be positive".into(),
            ));
        }
        if let Some(fraction) = self.depth_fraction {
            if !(fraction > 0.0 && fraction <= 1.0) {
                return Err(Error::InvalidInput(format!(
                    "depth fraction must lie in (0, 1], got {fraction}"
                )));
            }
        }
        let depth = self.measurement_depth()?;
        if depth == 0 {
            return Err(Error::InvalidInput(
                "measurement depth must be at least 1".into(),
            ));
        }
        if depth > self.declared_gate_count() {
            return Err(Error::InvalidInput(format!(
                "measurement depth {depth} exceeds the non-Clifford gate count {}",
                self.declared_gate_count()
            )));
        }
        Ok(())
    }

    /// Replace whatever depth information is present with a fraction.
    pub fn with_depth_fraction(mut self, fraction: f64) -> Self {
        self.measurement_depth = None;
        self.depth_fraction = Some(fraction);
        self
    }

    /// Replace whatever depth information is present with an absolute depth.
    pub fn with_measurement_depth(mut self, depth: u64) -> Self {
        self.measurement_depth = Some(depth);
        self.depth_fraction = None;
        self
    }
}

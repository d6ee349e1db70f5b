// Copyright 2026 The ftqc-estimator Authors
// SPDX-License-Identifier: Apache-2.0

//! Hardware quantities, the surface-code logical error model, code-distance
//! calibration and failure-probability accounting.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Error rate at which surface-code suppression stops working.
pub const THRESHOLD: f64 = 0.01;

/// Classical processing latency added to every reaction time.
pub const CLASSICAL_LATENCY_S: f64 = 10e-6;

/// Largest code distance considered by default.
pub const DEFAULT_MAX_DISTANCE: u32 = 99;

/// Reaction time implied by a code cycle time when none is given explicitly.
pub fn default_reaction_time(code_cycle_s: f64) -> f64 {
    code_cycle_s / 4.0 + CLASSICAL_LATENCY_S
}

/// Logical error rate per logical qubit per code cycle.
///
/// `0.1 * (100 p)^((d + 1) / 2)`. Rejects rates at or above threshold, where
/// increasing the distance would make things worse.
pub fn logical_error_rate(p: f64, d: u32) -> Result<f64> {
    check_physical_error(p)?;
    if d == 0 {
        return Err(Error::InvalidInput("code distance must be positive".into()));
    }
    Ok(logical_error_rate_unchecked(p, d))
}

#[inline]
pub(crate) fn logical_error_rate_unchecked(p: f64, d: u32) -> f64 {
    let exponent = f64::from(d + 1) / 2.0;
    0.1 * (100.0 * p).powf(exponent)
}

/// Physical qubits (data plus measurement) in one tile of distance `d`.
pub fn physical_qubits_per_tile(d: u32) -> u64 {
    2 * u64::from(d) * u64::from(d)
}

/// Worst-case physical error rate compatible with an average gate fidelity on
/// a `hilbert_dim`-dimensional gate, `sqrt(dim (dim + 1) (1 - F))`.
pub fn worst_case_physical_error(fidelity: f64, hilbert_dim: u32) -> f64 {
    let dim = f64::from(hilbert_dim);
    (dim * (dim + 1.0) * infidelity(fidelity)).sqrt()
}

/// `1 - F`, taken on the shortest decimal form of `F` so that a fidelity
/// written as `0.999995` yields exactly the nearest double to `5e-6`.
fn infidelity(fidelity: f64) -> f64 {
    if !(fidelity > 0.0 && fidelity < 1.0) {
        return (1.0 - fidelity).max(0.0);
    }
    let text = fidelity.to_string();
    let digits = match text.strip_prefix("0.") {
        Some(d) if !d.is_empty() && d.len() <= 30 && d.bytes().all(|b| b.is_ascii_digit()) => d,
        _ => return 1.0 - fidelity,
    };
    let scale = 10u128.pow(digits.len() as u32);
    let complement = scale - digits.parse::<u128>().unwrap_or(0);
    format!("{complement}e-{}", digits.len())
        .parse()
        .unwrap_or(1.0 - fidelity)
}

/// Side length in metres of a square device holding `qubits` physical qubits.
pub fn device_area(qubits: f64, area_per_qubit_m2: f64) -> f64 {
    (qubits.max(0.0) * area_per_qubit_m2).sqrt()
}

pub(crate) fn check_physical_error(p: f64) -> Result<()> {
    if !(p > 0.0) {
        return Err(Error::InvalidInput(format!(
            "physical error rate must be positive, got {p}"
        )));
    }
    if p >= THRESHOLD {
        return Err(Error::AboveThreshold { p });
    }
    Ok(())
}

/// An odd surface-code distance of at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct CodeDistance(u32);

impl CodeDistance {
    pub const MIN: CodeDistance = CodeDistance(3);

    pub fn new(d: u32) -> Result<Self> {
        if d < 3 || d.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "code distance must be odd and at least 3, got {d}"
            )));
        }
        Ok(Self(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Physical qubits in one tile at this distance.
    pub fn tile_qubits(self) -> u64 {
        physical_qubits_per_tile(self.0)
    }

    /// Odd distances in `[min, max]`, ascending.
    pub fn odd_range(min: u32, max: u32) -> impl Iterator<Item = CodeDistance> {
        let start = if min < 3 { 3 } else { min | 1 };
        (start..=max).step_by(2).map(CodeDistance)
    }
}

impl TryFrom<u32> for CodeDistance {
    type Error = Error;

    fn try_from(value: u32) -> Result<Self> {
        CodeDistance::new(value)
    }
}

impl From<CodeDistance> for u32 {
    fn from(d: CodeDistance) -> u32 {
        d.0
    }
}

impl fmt::Display for CodeDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Smallest odd distance `d >= 3` such that
/// `n_tiles * total_cycles * p_L(p, d) <= budget`.
pub fn calibrate_code_distance(
    n_tiles: u64,
    total_cycles: u64,
    p: f64,
    budget: f64,
    d_max: u32,
) -> Result<CodeDistance> {
    check_physical_error(p)?;
    if n_tiles == 0 || total_cycles == 0 {
        return Err(Error::InvalidInput(
            "tile count and cycle count must be positive".into(),
        ));
    }
    if !(budget > 0.0) {
        return Err(Error::InvalidInput(format!(
            "topological budget must be positive, got {budget}"
        )));
    }
    let volume = n_tiles as f64 * total_cycles as f64;
    CodeDistance::odd_range(3, d_max)
        .find(|d| volume * logical_error_rate_unchecked(p, d.get()) <= budget)
        .ok_or_else(|| {
            Error::CalibrationInfeasible(format!(
                "no code distance up to {d_max} keeps {n_tiles} tiles over {total_cycles} cycles below {budget}"
            ))
        })
}

/// Physical characteristics of a target device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HardwareProfile {
    pub code_cycle_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reaction_time_s: Option<f64>,
    #[serde(rename = "physical_error_prob")]
    pub physical_error_rate: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qubit_area_m2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_physical_qubits: Option<u64>,
}

impl HardwareProfile {
    pub fn new(code_cycle_s: f64, physical_error_rate: f64) -> Result<Self> {
        let profile = Self {
            code_cycle_s,
            reaction_time_s: None,
            physical_error_rate,
            qubit_area_m2: None,
            max_physical_qubits: None,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn with_reaction_time(mut self, reaction_time_s: f64) -> Result<Self> {
        self.reaction_time_s = Some(reaction_time_s);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.code_cycle_s > 0.0) || !self.code_cycle_s.is_finite() {
            return Err(Error::InvalidInput(format!(
                "code cycle time must be positive, got {}",
                self.code_cycle_s
            )));
        }
        if let Some(rt) = self.reaction_time_s {
            if !(rt > 0.0) || !rt.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "reaction time must be positive, got {rt}"
                )));
            }
        }
        if let Some(area) = self.qubit_area_m2 {
            if !(area > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "qubit area must be positive, got {area}"
                )));
            }
        }
        check_physical_error(self.physical_error_rate)
    }

    /// Explicit reaction time, or the default derived from the code cycle.
    pub fn reaction_time(&self) -> f64 {
        self.reaction_time_s
            .unwrap_or_else(|| default_reaction_time(self.code_cycle_s))
    }

    /// Code cycles elapsed in `seconds`, rounded up.
    pub fn cycles_in(&self, seconds: f64) -> u64 {
        ceil_count(seconds / self.code_cycle_s)
    }
}

/// `ceil` for quantities that should be whole numbers; values within a
/// relative 1e-9 of an integer snap to it instead of rounding up.
pub(crate) fn ceil_count(x: f64) -> u64 {
    let rounded = x.round();
    if (x - rounded).abs() <= 1e-9 * rounded.abs().max(1.0) {
        rounded.max(0.0) as u64
    } else {
        x.ceil().max(0.0) as u64
    }
}

/// Allowed failure probability split between the data block and distillation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorBudget {
    #[serde(rename = "topological_prob")]
    pub topological: f64,
    #[serde(rename = "distillation_prob")]
    pub distillation: f64,
}

impl Default for ErrorBudget {
    fn default() -> Self {
        Self {
            topological: 0.01,
            distillation: 0.05,
        }
    }
}

impl ErrorBudget {
    pub fn new(topological: f64, distillation: f64) -> Result<Self> {
        let budget = Self {
            topological,
            distillation,
        };
        budget.validate()?;
        Ok(budget)
    }

    pub fn validate(&self) -> Result<()> {
        let in_unit = |x: f64| x > 0.0 && x < 1.0;
        if !in_unit(self.topological) || !in_unit(self.distillation) {
            return Err(Error::InvalidInput(format!(
                "error budgets must lie in (0, 1), got topological {} and distillation {}",
                self.topological, self.distillation
            )));
        }
        if self.topological + self.distillation >= 1.0 {
            return Err(Error::InvalidInput(
                "topological and distillation budgets must sum to less than 1".into(),
            ));
        }
        Ok(())
    }
}

/// Failure probabilities of an estimate; the total is their linear sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailureAccount {
    #[serde(rename = "topological_error_prob")]
    pub topological_error: f64,
    #[serde(rename = "distillation_error_prob")]
    pub distillation_error: f64,
    #[serde(rename = "total_failure_prob")]
    pub total: f64,
}

/// Combine the two failure sources, clamping the sum at 1.
pub fn failure_account(topological: f64, distillation: f64) -> FailureAccount {
    FailureAccount {
        topological_error: topological,
        distillation_error: distillation,
        total: (topological + distillation).min(1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn reaction_time_formula() {
        assert!(close(default_reaction_time(1e-6), 10.25e-6, 1e-12));
        assert!(close(default_reaction_time(235e-6), 68.75e-6, 1e-12));
        assert!(close(default_reaction_time(0.0), 10e-6, 1e-12));
    }

    #[test]
    fn logical_error_examples() {
        assert!(close(logical_error_rate(1e-3, 1).unwrap(), 0.01, 1e-12));
        assert!(close(logical_error_rate(1e-3, 27).unwrap(), 1e-15, 1e-12));
        // 0.1 * 0.2^7 computed exactly as 128 / 10^8.
        assert!(close(logical_error_rate(2e-3, 13).unwrap(), 1.28e-6, 1e-12));
    }

    #[test]
    fn logical_error_rejects_threshold() {
        assert_eq!(
            logical_error_rate(0.01, 5),
            Err(Error::AboveThreshold { p: 0.01 })
        );
        assert!(logical_error_rate(0.02, 5).is_err());
        assert!(logical_error_rate(0.0, 5).is_err());
    }

    #[test]
    fn tile_qubits() {
        assert_eq!(physical_qubits_per_tile(25), 1250);
        assert_eq!(physical_qubits_per_tile(1), 2);
        assert_eq!(physical_qubits_per_tile(33), 2178);
    }

    #[test]
    fn worst_case_fidelity_examples() {
        assert_eq!(worst_case_physical_error(0.999995, 4), 0.01);
        assert_eq!(infidelity(0.999995), 5e-6);
        assert_eq!(infidelity(0.25), 0.75);
        assert_eq!(infidelity(1e-20), 1.0);
        assert_eq!(worst_case_physical_error(1.0, 8), 0.0);
        assert!(close(
            worst_case_physical_error(0.99, 2),
            0.06_f64.sqrt(),
            1e-12
        ));
    }

    #[test]
    fn distance_calibration_examples() {
        let d = calibrate_code_distance(2196, 1_070_000_000_000, 1e-3, 0.01, 99).unwrap();
        assert_eq!(d.get(), 33);
        let d = calibrate_code_distance(2871, 3_600_000_000, 1e-3, 0.01, 99).unwrap();
        assert_eq!(d.get(), 29);
        let d = calibrate_code_distance(1, 1, 1e-3, 0.5, 99).unwrap();
        assert_eq!(d.get(), 3);
    }

    #[test]
    fn distance_calibration_fails_past_d_max() {
        let err = calibrate_code_distance(1_000_000, 1_000_000_000_000, 9e-3, 1e-3, 15);
        assert!(matches!(err, Err(Error::CalibrationInfeasible(_))));
    }

    #[test]
    fn device_area_examples() {
        assert!(close(device_area(2e9, 5.36e-6), 103.5, 0.01));
        assert!(close(device_area(40e6, 5.36e-6), 14.64, 0.01));
        assert_eq!(device_area(0.0, 5.36e-6), 0.0);
    }

    #[test]
    fn failure_sum_and_clamp() {
        assert!(close(failure_account(0.01, 0.05).total, 0.06, 1e-12));
        assert_eq!(failure_account(0.0, 0.0).total, 0.0);
        assert_eq!(failure_account(0.7, 0.7).total, 1.0);
    }

    #[test]
    fn code_distance_rejects_even_and_small() {
        assert!(CodeDistance::new(4).is_err());
        assert!(CodeDistance::new(1).is_err());
        assert_eq!(CodeDistance::new(5).unwrap().get(), 5);
        let ds: Vec<u32> = CodeDistance::odd_range(3, 9)
            .map(CodeDistance::get)
            .collect();
        assert_eq!(ds, vec![3, 5, 7, 9]);
    }

    #[test]
    fn profile_validation() {
        assert!(HardwareProfile::new(1e-6, 1e-3).is_ok());
        assert!(HardwareProfile::new(0.0, 1e-3).is_err());
        assert!(HardwareProfile::new(1e-6, 0.01).is_err());
        let p = HardwareProfile::new(235e-6, 1e-3).unwrap();
        assert!(close(p.reaction_time(), 68.75e-6, 1e-12));
        let p = p.with_reaction_time(70e-6).unwrap();
        assert_eq!(p.reaction_time(), 70e-6);
    }

    #[test]
    fn cycles_in_rounds_up_but_ignores_float_noise() {
        let p = HardwareProfile::new(1e-6, 1e-3).unwrap();
        assert_eq!(p.cycles_in(3600.0), 3_600_000_000);
        assert_eq!(p.cycles_in(1.5e-6), 2);
    }

    #[test]
    fn budget_validation() {
        assert!(ErrorBudget::default().validate().is_ok());
        assert!(ErrorBudget::new(0.6, 0.5).is_err());
        assert!(ErrorBudget::new(0.0, 0.5).is_err());
    }
}

// Copyright 2026 The ftqc-estimator Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Domain errors raised by the estimation model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("physical error rate {p} is at or above the 1% surface-code threshold")]
    AboveThreshold { p: f64 },

    #[error("calibration infeasible: {0}")]
    CalibrationInfeasible(String),

    #[error("unit count {units} outside the allowed range [{min}, {max}]")]
    UnitCountOutOfRange { units: u64, min: u64, max: u64 },

    #[error("factory count {factories} outside the allowed range [1, {max}]")]
    FactoryCountOutOfRange { factories: u64, max: u64 },

    #[error("target runtime {target_s} s is unreachable; best achievable is {best_s} s")]
    TargetUnreachable { target_s: f64, best_s: f64 },

    #[error(
        "qubit budget {budget_qubits} is below the minimal configuration ({minimum_qubits} qubits)"
    )]
    BudgetTooSmall {
        budget_qubits: u64,
        minimum_qubits: u64,
    },

    #[error("distance calibration did not reach a fixed point after {iterations} iterations")]
    FixedPointDiverged { iterations: usize },
}

impl Error {
    /// True for errors that describe an infeasible physical configuration
    /// rather than malformed input.
    pub fn is_infeasible(&self) -> bool {
        !matches!(self, Error::InvalidInput(_) | Error::AboveThreshold { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

// Copyright 2026 The ftqc-estimator Authors
// SPDX-License-Identifier: Apache-2.0

//! Physical resource estimation for fault-tolerant algorithms on the surface
//! code: qubit counts and runtimes for beat-limited, GoSC-unit and AutoCCZ
//! strategies across hardware profiles, plus the sweeps built on them.

// Negated comparisons are used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod factories;
pub mod logical;
pub mod model;
pub mod strategies;
pub mod sweep;

pub use config::{ModelConfig, SweepSettings};
pub use error::{Error, Result};
pub use factories::{AutoCczDesign, FactoryModel, TFactoryDesign, TFactoryProtocol};
pub use logical::{GateCurrency, LogicalRequirements};
pub use model::{CodeDistance, ErrorBudget, FailureAccount, HardwareProfile};
pub use strategies::{
    Estimator, FactoryDesign, Parallelism, PhysicalEstimate, Regime, StrategyConfig, StrategyFamily,
};
pub use sweep::{DepthOptimum, Phase, PowerLawFit, SweepSample, SweepSeries, Termination};

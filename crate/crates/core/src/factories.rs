// Copyright 2026 The ftqc-estimator Authors
// SPDX-License-Identifier: Apache-2.0

//! Magic-state factories: error models, footprints, and the distance
//! calibrations that pick the cheapest factory meeting a per-state budget.
//!
//! Two families are modelled. T factories are 15-to-1 distillation blocks,
//! either a single level or two levels chained; their output error is
//! `35 p^3` per level plus a topological term. AutoCCZ factories feed eight
//! level-1 T states into a CCZ stage, giving `28 e1^2` plus a topological
//! term; with both distances large this tends to `28 * (35 p^3)^2 =
//! 34300 p^6`.
//!
//! Every topological term is `stage tiles * stage cycles * p_L(p, d)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_physical_error, logical_error_rate_unchecked, CodeDistance};

/// Odd code distances scanned by factory calibration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceGrid {
    pub min_distance: u32,
    pub max_distance: u32,
}

impl Default for DistanceGrid {
    fn default() -> Self {
        Self {
            min_distance: 3,
            max_distance: 49,
        }
    }
}

impl DistanceGrid {
    pub fn iter(&self) -> impl Iterator<Item = CodeDistance> {
        CodeDistance::odd_range(self.min_distance, self.max_distance)
    }

    pub fn max(&self) -> CodeDistance {
        self.iter().last().unwrap_or(CodeDistance::MIN)
    }
}

/// Geometry of a two-level AutoCCZ factory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AutoCczGeometry {
    /// Whole-factory footprint, in tiles at the level-2 distance.
    pub footprint_tiles: f64,
    /// Factory period per CCZ state, in code cycles per unit of level-2 distance.
    pub cycles_per_distance: f64,
    /// Tiles of one level-1 15-to-1 block.
    pub level1_tiles: f64,
    /// Level-1 block duration, in code cycles per unit of level-1 distance.
    pub level1_cycles_per_distance: f64,
    /// Tiles of the CCZ (level-2) stage.
    pub level2_tiles: f64,
}

impl Default for AutoCczGeometry {
    fn default() -> Self {
        Self {
            footprint_tiles: 120.0,
            cycles_per_distance: 5.5,
            level1_tiles: 11.0,
            level1_cycles_per_distance: 5.5,
            level2_tiles: 20.0,
        }
    }
}

/// Geometry of a T-factory protocol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TFactoryGeometry {
    pub footprint_tiles: f64,
    /// Code cycles per output state, per unit of distance.
    pub cycles_per_distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TFactoryProtocol {
    /// One 15-to-1 round: `35 p^3 + topological`.
    SingleLevel,
    /// 15-to-1 fed by 15-to-1: `35 e1^3 + topological`.
    TwoLevel,
}

/// All tunable factory constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FactoryModel {
    /// Applied to every factory footprint; the single global tuning knob.
    pub footprint_multiplier: f64,
    pub autoccz: AutoCczGeometry,
    pub t_single_level: TFactoryGeometry,
    pub t_two_level: TFactoryGeometry,
    pub distance_grid: DistanceGrid,
}

impl Default for FactoryModel {
    fn default() -> Self {
        Self {
            footprint_multiplier: 1.0,
            autoccz: AutoCczGeometry::default(),
            t_single_level: TFactoryGeometry {
                footprint_tiles: 11.0,
                cycles_per_distance: 11.0,
            },
            t_two_level: TFactoryGeometry {
                footprint_tiles: 24.0,
                cycles_per_distance: 4.0,
            },
            distance_grid: DistanceGrid::default(),
        }
    }
}

impl FactoryModel {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.footprint_multiplier,
            self.autoccz.footprint_tiles,
            self.autoccz.cycles_per_distance,
            self.autoccz.level1_tiles,
            self.autoccz.level1_cycles_per_distance,
            self.autoccz.level2_tiles,
            self.t_single_level.footprint_tiles,
            self.t_single_level.cycles_per_distance,
            self.t_two_level.footprint_tiles,
            self.t_two_level.cycles_per_distance,
        ];
        if positive.iter().any(|x| !(*x > 0.0) || !x.is_finite()) {
            return Err(Error::InvalidInput(
                "factory constants must be positive and finite".into(),
            ));
        }
        if self.distance_grid.iter().next().is_none() {
            return Err(Error::InvalidInput(
                "factory distance grid contains no odd distance >= 3".into(),
            ));
        }
        Ok(())
    }

    fn geometry(&self, protocol: TFactoryProtocol) -> &TFactoryGeometry {
        match protocol {
            TFactoryProtocol::SingleLevel => &self.t_single_level,
            TFactoryProtocol::TwoLevel => &self.t_two_level,
        }
    }

    /// AutoCCZ period in code cycles: `round(5.5 d2)` with default geometry.
    pub fn autoccz_duration_cycles(&self, d2: CodeDistance) -> u64 {
        (self.autoccz.cycles_per_distance * f64::from(d2.get())).round() as u64
    }

    pub fn autoccz_footprint_qubits(&self, d2: CodeDistance) -> u64 {
        (self.footprint_multiplier * self.autoccz.footprint_tiles * d2.tile_qubits() as f64).round()
            as u64
    }

    fn t_duration_cycles(&self, protocol: TFactoryProtocol, d: CodeDistance) -> u64 {
        let g = self.geometry(protocol);
        (g.cycles_per_distance * f64::from(d.get()))
            .round()
            .max(1.0) as u64
    }

    fn t_footprint_qubits(&self, protocol: TFactoryProtocol, d: CodeDistance) -> u64 {
        let g = self.geometry(protocol);
        (self.footprint_multiplier * g.footprint_tiles * d.tile_qubits() as f64).round() as u64
    }

    fn single_level_error(&self, p: f64, d: CodeDistance) -> f64 {
        let g = &self.t_single_level;
        let volume = g.footprint_tiles * g.cycles_per_distance * f64::from(d.get());
        35.0 * p.powi(3) + volume * logical_error_rate_unchecked(p, d.get())
    }

    fn two_level_error(&self, p: f64, d: CodeDistance) -> f64 {
        let level1 = self.single_level_error(p, d);
        let g = &self.t_two_level;
        let volume = g.footprint_tiles * g.cycles_per_distance * f64::from(d.get());
        35.0 * level1.powi(3) + volume * logical_error_rate_unchecked(p, d.get())
    }

    fn autoccz_error(&self, p: f64, d1: CodeDistance, d2: CodeDistance) -> f64 {
        let g = &self.autoccz;
        let level1_volume = g.level1_tiles * g.level1_cycles_per_distance * f64::from(d1.get());
        let level2_volume = g.level2_tiles * g.cycles_per_distance * f64::from(d2.get());
        let level1 = 35.0 * p.powi(3) + level1_volume * logical_error_rate_unchecked(p, d1.get());
        28.0 * level1 * level1 + level2_volume * logical_error_rate_unchecked(p, d2.get())
    }

    fn t_design(&self, protocol: TFactoryProtocol, p: f64, d: CodeDistance) -> TFactoryDesign {
        let output_error = match protocol {
            TFactoryProtocol::SingleLevel => self.single_level_error(p, d),
            TFactoryProtocol::TwoLevel => self.two_level_error(p, d),
        };
        TFactoryDesign {
            protocol,
            distance: d,
            footprint_tiles: self.geometry(protocol).footprint_tiles,
            footprint_qubits: self.t_footprint_qubits(protocol, d),
            duration_cycles: self.t_duration_cycles(protocol, d),
            output_error,
        }
    }

    fn autoccz_design(&self, p: f64, d1: CodeDistance, d2: CodeDistance) -> AutoCczDesign {
        AutoCczDesign {
            level1_distance: d1,
            level2_distance: d2,
            footprint_qubits: self.autoccz_footprint_qubits(d2),
            duration_cycles: self.autoccz_duration_cycles(d2),
            output_error: self.autoccz_error(p, d1, d2),
        }
    }
}

/// A calibrated T factory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TFactoryDesign {
    pub protocol: TFactoryProtocol,
    #[serde(rename = "factory_distance")]
    pub distance: CodeDistance,
    pub footprint_tiles: f64,
    pub footprint_qubits: u64,
    pub duration_cycles: u64,
    #[serde(rename = "output_error_prob")]
    pub output_error: f64,
}

impl TFactoryDesign {
    /// Physical qubits times cycles per output state.
    pub fn volume(&self) -> u128 {
        u128::from(self.footprint_qubits) * u128::from(self.duration_cycles)
    }
}

/// A calibrated two-level AutoCCZ factory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutoCczDesign {
    pub level1_distance: CodeDistance,
    pub level2_distance: CodeDistance,
    pub footprint_qubits: u64,
    pub duration_cycles: u64,
    #[serde(rename = "output_error_prob")]
    pub output_error: f64,
}

impl AutoCczDesign {
    pub fn volume(&self) -> u128 {
        u128::from(self.footprint_qubits) * u128::from(self.duration_cycles)
    }
}

/// Split of the total distillation budget over the states an algorithm uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistillationBudget {
    pub total_budget: f64,
    pub state_count: u64,
    pub per_state: f64,
}

impl DistillationBudget {
    pub fn new(total_budget: f64, state_count: u64) -> Result<Self> {
        if state_count == 0 {
            return Err(Error::InvalidInput("state count must be at least 1".into()));
        }
        Ok(Self {
            total_budget,
            state_count,
            per_state: per_state_budget(total_budget, state_count),
        })
    }
}

/// Allowed error per magic state when `state_count` states share `total_budget`.
pub fn per_state_budget(total_budget: f64, state_count: u64) -> f64 {
    total_budget / state_count.max(1) as f64
}

/// Routing overhead multiplier: 1.01 for one factory, rising linearly to 1.5
/// at the time-optimal factory count.
pub fn routing_factor(n_factories: u64, n_factories_at_time_optimal: u64) -> f64 {
    let max = n_factories_at_time_optimal.max(1);
    let n = n_factories.clamp(1, max);
    let span = (max - 1).max(1) as f64;
    1.01 + 0.49 * (n - 1) as f64 / span
}

/// Output error per CCZ state of the AutoCCZ factory at distances `(d1, d2)`.
pub fn autoccz_output_error(
    model: &FactoryModel,
    p: f64,
    d1: CodeDistance,
    d2: CodeDistance,
) -> Result<f64> {
    check_physical_error(p)?;
    Ok(model.autoccz_error(p, d1, d2))
}

/// Output error per T state of a single-level 15-to-1 factory at distance `d`.
pub fn t_factory_error(model: &FactoryModel, p: f64, d: CodeDistance) -> Result<f64> {
    check_physical_error(p)?;
    Ok(model.single_level_error(p, d))
}

/// Output error per T state of the two-level factory at distance `d`.
pub fn two_level_t_factory_error(model: &FactoryModel, p: f64, d: CodeDistance) -> Result<f64> {
    check_physical_error(p)?;
    Ok(model.two_level_error(p, d))
}

fn check_budget(per_state_budget: f64) -> Result<()> {
    if !(per_state_budget > 0.0) {
        return Err(Error::InvalidInput(format!(
            "per-state budget must be positive, got {per_state_budget}"
        )));
    }
    Ok(())
}

/// Cheapest AutoCCZ design on the distance grid meeting `per_state_budget`.
///
/// Minimises footprint times duration; ties go to the smaller level-2 distance,
/// then the smaller level-1 distance.
pub fn calibrate_autoccz(
    model: &FactoryModel,
    p: f64,
    per_state_budget: f64,
) -> Result<AutoCczDesign> {
    check_physical_error(p)?;
    check_budget(per_state_budget)?;
    let grid = model.distance_grid;
    grid.iter()
        .flat_map(|d2| grid.iter().map(move |d1| (d1, d2)))
        .map(|(d1, d2)| model.autoccz_design(p, d1, d2))
        .filter(|design| design.output_error <= per_state_budget)
        .min_by_key(|design| (design.volume(), design.level2_distance, design.level1_distance))
        .ok_or_else(|| {
            Error::CalibrationInfeasible(format!(
                "no AutoCCZ distances up to {} reach {per_state_budget:.3e} per CCZ state at p = {p}",
                grid.max_distance
            ))
        })
}

fn calibrate_protocol(
    model: &FactoryModel,
    protocol: TFactoryProtocol,
    p: f64,
    per_state_budget: f64,
) -> Option<TFactoryDesign> {
    model
        .distance_grid
        .iter()
        .map(|d| model.t_design(protocol, p, d))
        .filter(|design| design.output_error <= per_state_budget)
        .min_by_key(|design| (design.volume(), design.distance))
}

/// Cheapest single-level 15-to-1 factory meeting `per_state_budget`.
pub fn calibrate_t_factory(
    model: &FactoryModel,
    p: f64,
    per_state_budget: f64,
) -> Result<TFactoryDesign> {
    check_physical_error(p)?;
    check_budget(per_state_budget)?;
    calibrate_protocol(model, TFactoryProtocol::SingleLevel, p, per_state_budget).ok_or_else(|| {
        Error::CalibrationInfeasible(format!(
            "single-level 15-to-1 cannot reach {per_state_budget:.3e} per T state at p = {p}"
        ))
    })
}

/// Cheapest T factory over both protocols meeting `per_state_budget`.
///
/// The single-level protocol wins volume ties.
pub fn calibrate_best_t_factory(
    model: &FactoryModel,
    p: f64,
    per_state_budget: f64,
) -> Result<TFactoryDesign> {
    check_physical_error(p)?;
    check_budget(per_state_budget)?;
    [TFactoryProtocol::SingleLevel, TFactoryProtocol::TwoLevel]
        .into_iter()
        .filter_map(|protocol| calibrate_protocol(model, protocol, p, per_state_budget))
        .min_by_key(|design| design.volume())
        .ok_or_else(|| {
            Error::CalibrationInfeasible(format!(
                "no T factory protocol reaches {per_state_budget:.3e} per T state at p = {p}"
            ))
        })
}

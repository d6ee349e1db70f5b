// Copyright 2026 The ftqc-estimator Authors
// SPDX-License-Identifier: Apache-2.0

//! Surface-code strategy estimators and the inverse solvers built on them.
//!
//! * Beat-limited: one fast data block consuming a T state per beat.
//! * GoSC units: replicated data blocks with their own T factories, each unit
//!   handling one measurement layer at a time.
//! * AutoCCZ: one compact data block fed by a bank of AutoCCZ factories.
//!
//! All three find the data-block distance by iterating distance and runtime
//! to a fixed point, since the topological budget depends on the number of
//! code cycles and the runtime can depend on the distance.

use serde::{Deserialize, Serialize};

use crate::config::ModelConfig;
use crate::error::{Error, Result};
use crate::factories::{
    calibrate_autoccz, calibrate_best_t_factory, per_state_budget, routing_factor, AutoCczDesign,
    TFactoryDesign,
};
use crate::logical::{GateCurrency, LogicalRequirements};
use crate::model::{
    calibrate_code_distance, ceil_count, failure_account, logical_error_rate_unchecked,
    CodeDistance, ErrorBudget, FailureAccount, HardwareProfile,
};

/// Smallest unit count of a linear GoSC arrangement.
pub const MIN_GOSC_UNITS: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyFamily {
    BeatLimited,
    GoscUnits,
    AutoCcz,
}

impl StrategyFamily {
    pub fn currency(self) -> GateCurrency {
        match self {
            StrategyFamily::BeatLimited | StrategyFamily::GoscUnits => GateCurrency::TGate,
            StrategyFamily::AutoCcz => GateCurrency::CczState,
        }
    }
}

/// Explicit parallelism, or the time-optimal amount.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parallelism {
    Auto,
    Count(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyConfig {
    BeatLimited,
    GoscUnits(Parallelism),
    AutoCcz(Parallelism),
}

impl StrategyConfig {
    pub fn family(&self) -> StrategyFamily {
        match self {
            StrategyConfig::BeatLimited => StrategyFamily::BeatLimited,
            StrategyConfig::GoscUnits(_) => StrategyFamily::GoscUnits,
            StrategyConfig::AutoCcz(_) => StrategyFamily::AutoCcz,
        }
    }
}

/// What limits the computation rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Beat,
    Tick,
    Reaction,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactoryDesign {
    TFactory(TFactoryDesign),
    AutoCcz(AutoCczDesign),
}

impl FactoryDesign {
    pub fn footprint_qubits(&self) -> u64 {
        match self {
            FactoryDesign::TFactory(t) => t.footprint_qubits,
            FactoryDesign::AutoCcz(a) => a.footprint_qubits,
        }
    }

    pub fn duration_cycles(&self) -> u64 {
        match self {
            FactoryDesign::TFactory(t) => t.duration_cycles,
            FactoryDesign::AutoCcz(a) => a.duration_cycles,
        }
    }

    pub fn output_error(&self) -> f64 {
        match self {
            FactoryDesign::TFactory(t) => t.output_error,
            FactoryDesign::AutoCcz(a) => a.output_error,
        }
    }
}

/// Layout of one GoSC unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoscUnitGeometry {
    /// Data block plus `2 T_layer` storage tiles.
    pub unit_tiles: u64,
    /// Beats to process one measurement layer.
    pub unit_time_beats: u64,
    /// `unit_time_beats * d * CC` at the calibrated distance.
    pub unit_time_s: f64,
    #[serde(rename = "unit_factory_count")]
    pub factories_per_unit: u64,
    /// Units at which the time-optimal limit is reached.
    #[serde(rename = "time_optimal_unit_count")]
    pub time_optimal_units: u64,
}

impl GoscUnitGeometry {
    /// Tile count and unit time of a unit for `n` logical qubits and
    /// `t_layer` T gates per layer.
    pub fn layout(n: u64, t_layer: f64) -> (u64, u64) {
        let sqrt_n = (n as f64).sqrt();
        let tiles = 4 * n + 4 * ceil_count(sqrt_n) + 1 + 2 * ceil_count(t_layer);
        let beats = ceil_count(t_layer + sqrt_n + 3.0);
        (tiles, beats)
    }
}

/// Physical cost of running an algorithm under one strategy configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalEstimate {
    pub strategy: StrategyFamily,
    pub total_physical_qubits: u64,
    pub runtime_s: f64,
    pub total_cycles: u64,
    pub data_distance: CodeDistance,
    /// Data tiles summed over all units.
    pub data_tiles: u64,
    pub factory: FactoryDesign,
    /// Factories summed over all units.
    pub factory_count: u64,
    pub unit_count: u64,
    pub routing_factor: f64,
    pub limiting_regime: Regime,
    pub failure: FailureAccount,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_geometry: Option<GoscUnitGeometry>,
    /// Iterations taken by the distance/runtime fixed point.
    #[serde(rename = "calibration_iteration_count")]
    pub calibration_iterations: usize,
}

/// Minimum runtime: one reaction time per measurement layer.
pub fn time_optimal_runtime(spec: &LogicalRequirements, profile: &HardwareProfile) -> Result<f64> {
    Ok(spec.measurement_depth()? as f64 * profile.reaction_time())
}

/// Outcome of the distance fixed point.
struct Calibrated<T> {
    distance: CodeDistance,
    iterations: usize,
    cycles: u64,
    value: T,
}

/// Runs the strategy estimators against one model configuration.
#[derive(Debug, Clone, Copy, Default)]
pub struct Estimator {
    config: ModelConfig,
}

impl Estimator {
    pub fn new(config: ModelConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self { config })
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    fn validate(
        &self,
        spec: &LogicalRequirements,
        profile: &HardwareProfile,
        budget: &ErrorBudget,
    ) -> Result<u64> {
        spec.validate()?;
        profile.validate()?;
        budget.validate()?;
        spec.measurement_depth()
    }

    /// Iterate `d -> runtime(d) -> cycles -> d'` until the distance is stable.
    ///
    /// `eval` maps a distance to `(tiles protected by the topological budget,
    /// runtime in seconds, extra)`.
    fn fixed_point<T>(
        &self,
        profile: &HardwareProfile,
        budget: &ErrorBudget,
        mut eval: impl FnMut(CodeDistance) -> (u64, f64, T),
    ) -> Result<Calibrated<T>> {
        let mut d = CodeDistance::new(self.config.initial_distance)?;
        for iteration in 1..=self.config.max_fixed_point_iterations {
            let (tiles, runtime, value) = eval(d);
            let cycles = profile.cycles_in(runtime).max(1);
            let next = calibrate_code_distance(
                tiles,
                cycles,
                profile.physical_error_rate,
                budget.topological,
                self.config.max_code_distance,
            )?;
            if next == d {
                return Ok(Calibrated {
                    distance: d,
                    iterations: iteration,
                    cycles,
                    value,
                });
            }
            d = next;
        }
        Err(Error::FixedPointDiverged {
            iterations: self.config.max_fixed_point_iterations,
        })
    }

    fn topological_error(&self, p: f64, tiles: u64, cycles: u64, d: CodeDistance) -> f64 {
        tiles as f64 * cycles as f64 * logical_error_rate_unchecked(p, d.get())
    }

    fn t_factory(&self, p: f64, t_count: u64, budget: &ErrorBudget) -> Result<TFactoryDesign> {
        calibrate_best_t_factory(
            &self.config.factories,
            p,
            per_state_budget(budget.distillation, t_count),
        )
    }

    fn autoccz_factory(&self, p: f64, ccz: u64, budget: &ErrorBudget) -> Result<AutoCczDesign> {
        calibrate_autoccz(
            &self.config.factories,
            p,
            per_state_budget(budget.distillation, ccz),
        )
    }

    /// One fast data block (`2n + sqrt(8n) + 1` tiles) consuming one T state
    /// per beat, with enough T factories to keep up.
    pub fn estimate_beat_limited(
        &self,
        spec: &LogicalRequirements,
        profile: &HardwareProfile,
        budget: &ErrorBudget,
    ) -> Result<PhysicalEstimate> {
        let depth = self.validate(spec, profile, budget)?;
        let p = profile.physical_error_rate;
        let t_count = spec.effective_count(GateCurrency::TGate);
        let n = spec.logical_qubits;
        let factory = self.t_factory(p, t_count, budget)?;
        let tiles = 2 * n + ceil_count((8.0 * n as f64).sqrt()) + 1;
        let floor = depth as f64 * profile.reaction_time();

        let cal = self.fixed_point(profile, budget, |d| {
            let consumption = t_count as f64 * f64::from(d.get()) * profile.code_cycle_s;
            (tiles, consumption.max(floor), consumption)
        })?;
        let d = cal.distance;
        let runtime = cal.value.max(floor);
        let factory_count = factory.duration_cycles.div_ceil(u64::from(d.get())).max(1);
        let qubits = tiles * d.tile_qubits() + factory_count * factory.footprint_qubits;
        let regime = if cal.value >= floor {
            Regime::Beat
        } else {
            Regime::Reaction
        };

        Ok(PhysicalEstimate {
            strategy: StrategyFamily::BeatLimited,
            total_physical_qubits: qubits,
            runtime_s: runtime,
            total_cycles: cal.cycles,
            data_distance: d,
            data_tiles: tiles,
            factory: FactoryDesign::TFactory(factory),
            factory_count,
            unit_count: 1,
            routing_factor: 1.0,
            limiting_regime: regime,
            failure: failure_account(
                self.topological_error(p, tiles, cal.cycles, d),
                t_count as f64 * factory.output_error,
            ),
            unit_geometry: None,
            calibration_iterations: cal.iterations,
        })
    }

    /// GoSC units at an explicit unit count.
    pub fn estimate_gosc_units(
        &self,
        spec: &LogicalRequirements,
        profile: &HardwareProfile,
        units: u64,
        budget: &ErrorBudget,
    ) -> Result<PhysicalEstimate> {
        let depth = self.validate(spec, profile, budget)?;
        let factory = self.t_factory(
            profile.physical_error_rate,
            spec.effective_count(GateCurrency::TGate),
            budget,
        )?;
        self.gosc_with_factory(spec, profile, units, depth, &factory, budget)
    }

    fn gosc_with_factory(
        &self,
        spec: &LogicalRequirements,
        profile: &HardwareProfile,
        units: u64,
        depth: u64,
        factory: &TFactoryDesign,
        budget: &ErrorBudget,
    ) -> Result<PhysicalEstimate> {
        if units < MIN_GOSC_UNITS {
            return Err(Error::UnitCountOutOfRange {
                units,
                min: MIN_GOSC_UNITS,
                max: u64::MAX,
            });
        }
        let p = profile.physical_error_rate;
        let t_count = spec.effective_count(GateCurrency::TGate);
        let t_layer = t_count as f64 / depth as f64;
        let (unit_tiles, beats) = GoscUnitGeometry::layout(spec.logical_qubits, t_layer);
        let rt = profile.reaction_time();
        let cc = profile.code_cycle_s;

        let cal = self.fixed_point(profile, budget, |d| {
            let unit_time = beats as f64 * f64::from(d.get()) * cc;
            let per_layer = (unit_time / units as f64).max(rt);
            (units * unit_tiles, depth as f64 * per_layer, unit_time)
        })?;
        let d = cal.distance;
        let unit_time = cal.value;
        let time_optimal_units = (unit_time / rt).floor() as u64 + 1;
        if units > time_optimal_units {
            return Err(Error::UnitCountOutOfRange {
                units,
                min: MIN_GOSC_UNITS,
                max: time_optimal_units,
            });
        }
        let per_layer = unit_time / units as f64;
        let runtime = depth as f64 * per_layer.max(rt);
        let factories_per_unit = ceil_count(
            t_layer * factory.duration_cycles as f64 / (beats * u64::from(d.get())) as f64,
        )
        .max(1);
        let data_tiles = units * unit_tiles;
        let qubits =
            units * (unit_tiles * d.tile_qubits() + factories_per_unit * factory.footprint_qubits);
        let regime = if per_layer <= rt {
            Regime::Reaction
        } else {
            Regime::Tick
        };

        Ok(PhysicalEstimate {
            strategy: StrategyFamily::GoscUnits,
            total_physical_qubits: qubits,
            runtime_s: runtime,
            total_cycles: cal.cycles,
            data_distance: d,
            data_tiles,
            factory: FactoryDesign::TFactory(*factory),
            factory_count: units * factories_per_unit,
            unit_count: units,
            routing_factor: 1.0,
            limiting_regime: regime,
            failure: failure_account(
                self.topological_error(p, data_tiles, cal.cycles, d),
                t_count as f64 * factory.output_error,
            ),
            unit_geometry: Some(GoscUnitGeometry {
                unit_tiles,
                unit_time_beats: beats,
                unit_time_s: unit_time,
                factories_per_unit,
                time_optimal_units,
            }),
            calibration_iterations: cal.iterations,
        })
    }

    /// Unit count at which GoSC reaches the time-optimal limit,
    /// `floor(t_u / RT) + 1`, evaluated at its own calibrated distance.
    pub fn gosc_time_optimal_units(
        &self,
        spec: &LogicalRequirements,
        profile: &HardwareProfile,
        budget: &ErrorBudget,
    ) -> Result<u64> {
        let depth = self.validate(spec, profile, budget)?;
        let factory = self.t_factory(
            profile.physical_error_rate,
            spec.effective_count(GateCurrency::TGate),
            budget,
        )?;
        self.gosc_time_optimal(spec, profile, depth, &factory, budget)
            .map(|e| e.unit_count)
    }

    fn gosc_time_optimal(
        &self,
        spec: &LogicalRequirements,
        profile: &HardwareProfile,
        depth: u64,
        factory: &TFactoryDesign,
        budget: &ErrorBudget,
    ) -> Result<PhysicalEstimate> {
        let t_layer = spec.effective_count(GateCurrency::TGate) as f64 / depth as f64;
        let (_, beats) = GoscUnitGeometry::layout(spec.logical_qubits, t_layer);
        let rt = profile.reaction_time();
        let units_at = |d: CodeDistance| {
            let unit_time = beats as f64 * f64::from(d.get()) * profile.code_cycle_s;
            ((unit_time / rt).floor() as u64 + 1).max(MIN_GOSC_UNITS)
        };
        let mut units = units_at(CodeDistance::new(self.config.initial_distance)?);
        for _ in 0..self.config.max_fixed_point_iterations {
            let estimate = self.gosc_with_factory(spec, profile, units, depth, factory, budget);
            let estimate = match estimate {
                // The distance grew past the guess; retry at the new maximum.
                Err(Error::UnitCountOutOfRange { max, .. })
                    if max >= MIN_GOSC_UNITS && max != units =>
                {
                    units = max;
                    continue;
                }
                other => other?,
            };
            let next = units_at(estimate.data_distance);
            if next == units {
                return Ok(estimate);
            }
            units = next;
        }
        Err(Error::FixedPointDiverged {
            iterations: self.config.max_fixed_point_iterations,
        })
    }

    /// Factory count at which AutoCCZ production matches one layer per
    /// reaction time.
    fn autoccz_time_optimal_factories(
        &self,
        spec: &LogicalRequirements,
        profile: &HardwareProfile,
        depth: u64,
        factory: &AutoCczDesign,
    ) -> u64 {
        let ccz = spec.effective_count(GateCurrency::CczState);
        let per_layer = ccz as f64 / depth as f64;
        ceil_count(
            per_layer * factory.duration_cycles as f64 * profile.code_cycle_s
                / profile.reaction_time(),
        )
        .max(1)
    }

    /// AutoCCZ factories feeding a single `n`-tile data block.
    pub fn estimate_autoccz(
        &self,
        spec: &LogicalRequirements,
        profile: &HardwareProfile,
        factories: u64,
        budget: &ErrorBudget,
    ) -> Result<PhysicalEstimate> {
        let depth = self.validate(spec, profile, budget)?;
        let ccz = spec.effective_count(GateCurrency::CczState);
        let factory = self.autoccz_factory(profile.physical_error_rate, ccz, budget)?;
        self.autoccz_with_factory(spec, profile, factories, depth, &factory, budget)
    }

    fn autoccz_with_factory(
        &self,
        spec: &LogicalRequirements,
        profile: &HardwareProfile,
        factories: u64,
        depth: u64,
        factory: &AutoCczDesign,
        budget: &ErrorBudget,
    ) -> Result<PhysicalEstimate> {
        let max = self.autoccz_time_optimal_factories(spec, profile, depth, factory);
        if factories == 0 || factories > max {
            return Err(Error::FactoryCountOutOfRange { factories, max });
        }
        let p = profile.physical_error_rate;
        let ccz = spec.effective_count(GateCurrency::CczState);
        let n = spec.logical_qubits;
        let production =
            ccz as f64 * factory.duration_cycles as f64 * profile.code_cycle_s / factories as f64;
        let floor = depth as f64 * profile.reaction_time();
        let runtime = production.max(floor);

        let cal = self.fixed_point(profile, budget, |_| (n, runtime, ()))?;
        let d = cal.distance;
        let routing = routing_factor(factories, max);
        let raw = n * d.tile_qubits() + factories * factory.footprint_qubits;
        let qubits = ceil_count(raw as f64 * routing);
        let regime = if production > floor {
            Regime::Tick
        } else {
            Regime::Reaction
        };

        Ok(PhysicalEstimate {
            strategy: StrategyFamily::AutoCcz,
            total_physical_qubits: qubits,
            runtime_s: runtime,
            total_cycles: cal.cycles,
            data_distance: d,
            data_tiles: n,
            factory: FactoryDesign::AutoCcz(*factory),
            factory_count: factories,
            unit_count: 1,
            routing_factor: routing,
            limiting_regime: regime,
            failure: failure_account(
                self.topological_error(p, n, cal.cycles, d),
                ccz as f64 * factory.output_error,
            ),
            unit_geometry: None,
            calibration_iterations: cal.iterations,
        })
    }

    /// Estimate for an explicit configuration; `Auto` selects the
    /// time-optimal amount of parallelism.
    pub fn estimate(
        &self,
        spec: &LogicalRequirements,
        profile: &HardwareProfile,
        config: StrategyConfig,
        budget: &ErrorBudget,
    ) -> Result<PhysicalEstimate> {
        match config {
            StrategyConfig::BeatLimited => self.estimate_beat_limited(spec, profile, budget),
            StrategyConfig::GoscUnits(Parallelism::Count(units)) => {
                self.estimate_gosc_units(spec, profile, units, budget)
            }
            StrategyConfig::AutoCcz(Parallelism::Count(factories)) => {
                self.estimate_autoccz(spec, profile, factories, budget)
            }
            StrategyConfig::GoscUnits(Parallelism::Auto) => {
                self.fastest(spec, profile, StrategyFamily::GoscUnits, budget)
            }
            StrategyConfig::AutoCcz(Parallelism::Auto) => {
                self.fastest(spec, profile, StrategyFamily::AutoCcz, budget)
            }
        }
    }

    /// The time-optimal configuration of a family.
    pub fn fastest(
        &self,
        spec: &LogicalRequirements,
        profile: &HardwareProfile,
        family: StrategyFamily,
        budget: &ErrorBudget,
    ) -> Result<PhysicalEstimate> {
        self.family_curve(spec, profile, family, budget)?.fastest()
    }

    fn family_curve<'a>(
        &'a self,
        spec: &'a LogicalRequirements,
        profile: &'a HardwareProfile,
        family: StrategyFamily,
        budget: &'a ErrorBudget,
    ) -> Result<Curve<'a>> {
        let depth = self.validate(spec, profile, budget)?;
        let p = profile.physical_error_rate;
        let kind = match family {
            StrategyFamily::BeatLimited => CurveKind::Beat,
            StrategyFamily::GoscUnits => {
                let factory =
                    self.t_factory(p, spec.effective_count(GateCurrency::TGate), budget)?;
                let max = self.gosc_time_optimal(spec, profile, depth, &factory, budget)?;
                CurveKind::Gosc {
                    factory,
                    max: Box::new(max),
                }
            }
            StrategyFamily::AutoCcz => {
                let factory =
                    self.autoccz_factory(p, spec.effective_count(GateCurrency::CczState), budget)?;
                let max = self.autoccz_time_optimal_factories(spec, profile, depth, &factory);
                CurveKind::AutoCcz { factory, max }
            }
        };
        Ok(Curve {
            estimator: self,
            spec,
            profile,
            budget,
            depth,
            kind,
        })
    }

    /// Cheapest configuration of `family` finishing within `target_s`.
    ///
    /// Returns the smallest factory/unit count meeting the target; one fewer
    /// misses it.
    pub fn min_qubits_for_runtime(
        &self,
        spec: &LogicalRequirements,
        profile: &HardwareProfile,
        target_s: f64,
        family: StrategyFamily,
        budget: &ErrorBudget,
    ) -> Result<PhysicalEstimate> {
        if !(target_s > 0.0) {
            return Err(Error::InvalidInput(format!(
                "target runtime must be positive, got {target_s}"
            )));
        }
        let curve = self.family_curve(spec, profile, family, budget)?;
        let fastest = curve.fastest()?;
        if fastest.runtime_s > target_s {
            return Err(Error::TargetUnreachable {
                target_s,
                best_s: fastest.runtime_s,
            });
        }
        let (lo, hi) = curve.range();
        if lo == hi {
            return Ok(fastest);
        }
        let count = smallest_satisfying(lo, hi, |c| Ok(curve.at(c)?.runtime_s <= target_s))?;
        curve.at(count)
    }

    /// Fastest configuration of `family` using at most `qubit_budget` qubits.
    pub fn runtime_for_qubit_budget(
        &self,
        spec: &LogicalRequirements,
        profile: &HardwareProfile,
        qubit_budget: u64,
        family: StrategyFamily,
        budget: &ErrorBudget,
    ) -> Result<PhysicalEstimate> {
        if qubit_budget == 0 {
            return Err(Error::InvalidInput("qubit budget must be positive".into()));
        }
        let curve = self.family_curve(spec, profile, family, budget)?;
        let (lo, hi) = curve.range();
        let smallest = curve.at(lo)?;
        if smallest.total_physical_qubits > qubit_budget {
            return Err(Error::BudgetTooSmall {
                budget_qubits: qubit_budget,
                minimum_qubits: smallest.total_physical_qubits,
            });
        }
        // Qubits are not monotone in the count (a faster run can drop the
        // data distance), so scan down from the largest count whose factory
        // cost alone fits.
        let upper = hi.min((qubit_budget / curve.cost_per_count().max(1)).max(lo));
        let mut count = upper;
        while count > lo && curve.at(count)?.total_physical_qubits > qubit_budget {
            count -= 1;
        }
        curve.at(count)
    }
}

enum CurveKind {
    Beat,
    Gosc {
        factory: TFactoryDesign,
        max: Box<PhysicalEstimate>,
    },
    AutoCcz {
        factory: AutoCczDesign,
        max: u64,
    },
}

/// A family's estimates as a function of its parallelism, with the factory
/// calibrated once.
struct Curve<'a> {
    estimator: &'a Estimator,
    spec: &'a LogicalRequirements,
    profile: &'a HardwareProfile,
    budget: &'a ErrorBudget,
    depth: u64,
    kind: CurveKind,
}

impl Curve<'_> {
    fn range(&self) -> (u64, u64) {
        match &self.kind {
            CurveKind::Beat => (1, 1),
            CurveKind::Gosc { max, .. } => (MIN_GOSC_UNITS, max.unit_count),
            CurveKind::AutoCcz { max, .. } => (1, *max),
        }
    }

    fn at(&self, count: u64) -> Result<PhysicalEstimate> {
        let e = self.estimator;
        match &self.kind {
            CurveKind::Beat => e.estimate_beat_limited(self.spec, self.profile, self.budget),
            CurveKind::Gosc { factory, max } if count == max.unit_count => {
                let _ = factory;
                Ok(**max)
            }
            CurveKind::Gosc { factory, .. } => e.gosc_with_factory(
                self.spec,
                self.profile,
                count,
                self.depth,
                factory,
                self.budget,
            ),
            CurveKind::AutoCcz { factory, .. } => e.autoccz_with_factory(
                self.spec,
                self.profile,
                count,
                self.depth,
                factory,
                self.budget,
            ),
        }
    }

    /// Lower bound on the qubits each unit of parallelism adds.
    fn cost_per_count(&self) -> u64 {
        match &self.kind {
            CurveKind::Beat => 0,
            CurveKind::Gosc { max, .. } => max
                .unit_geometry
                .map_or(0, |g| g.unit_tiles * CodeDistance::MIN.tile_qubits()),
            CurveKind::AutoCcz { factory, .. } => factory.footprint_qubits,
        }
    }

    fn fastest(&self) -> Result<PhysicalEstimate> {
        self.at(self.range().1)
    }
}

const LINEAR_PROBES: u64 = 4;

/// Smallest `c` in `[lo, hi]` with `ok(c)`, given `ok(hi)` holds and `ok` is
/// monotone. Probes a few counts linearly, then gallops and bisects.
pub(crate) fn smallest_satisfying(
    lo: u64,
    hi: u64,
    mut ok: impl FnMut(u64) -> Result<bool>,
) -> Result<u64> {
    let linear_end = hi.min(lo.saturating_add(LINEAR_PROBES));
    for c in lo..linear_end {
        if ok(c)? {
            return Ok(c);
        }
    }
    // ok(linear_end - 1) is false (or the range was empty).
    let mut bad = linear_end.saturating_sub(1).max(lo);
    let mut step = 1u64;
    let mut good = loop {
        let probe = bad.saturating_add(step).min(hi);
        if probe >= hi || ok(probe)? {
            break probe;
        }
        bad = probe;
        step = step.saturating_mul(2);
    };
    if good == lo {
        return Ok(lo);
    }
    while good - bad > 1 {
        let mid = bad + (good - bad) / 2;
        if ok(mid)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    while good > lo && ok(good - 1)? {
        good -= 1;
    }
    Ok(good)
}

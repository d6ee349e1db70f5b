// Copyright 2026 The ftqc-estimator Authors
// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps, the measurement-depth optimisation and the power-law fit
//! of its equilibrium optima.
//!
//! Grid points are evaluated in parallel and merged in grid order, so the
//! result does not depend on the thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logical::LogicalRequirements;
use crate::model::{ErrorBudget, HardwareProfile, THRESHOLD};
use crate::strategies::{Estimator, PhysicalEstimate, StrategyFamily};

/// Why a sweep stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    GridExhausted,
    /// The target runtime fell below the time-optimal limit.
    TimeOptimalLimit,
    /// The factory or data block could no longer meet its error budget.
    CalibrationInfeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSample {
    /// Grid coordinate; its unit is given by the series' axis name.
    pub x: f64,
    pub estimate: PhysicalEstimate,
}

/// Estimates along one axis, ordered by `x`, up to the first failing point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSeries {
    pub axis_name: String,
    pub samples: Vec<SweepSample>,
    pub termination: Termination,
}

/// Log-spaced grid from `start` to `end` inclusive.
pub fn log_grid(start: f64, end: f64, points_per_decade: u32) -> Result<Vec<f64>> {
    if !(start > 0.0 && end >= start && end.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "log grid needs 0 < start <= end, got {start}..{end}"
        )));
    }
    if points_per_decade == 0 {
        return Err(Error::InvalidInput(
            "points_per_decade must be positive".into(),
        ));
    }
    let steps =
        ((end.log10() - start.log10()) * f64::from(points_per_decade) + 1e-9).floor() as u64;
    let mut grid: Vec<f64> = (0..=steps)
        .map(|i| start * 10f64.powf(i as f64 / f64::from(points_per_decade)))
        .collect();
    if let Some(last) = grid.last_mut() {
        if (*last / end - 1.0).abs() < 1e-9 {
            *last = end;
        }
    }
    Ok(grid)
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("sweep grid is empty".into()));
    }
    if grid.iter().any(|x| !x.is_finite()) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "sweep grid must be finite and strictly ascending".into(),
        ));
    }
    Ok(())
}

/// Evaluate every point, then keep the prefix before the first failure.
fn collect_series(
    axis_name: &str,
    grid: &[f64],
    eval: impl Fn(f64) -> Result<PhysicalEstimate> + Sync,
) -> Result<SweepSeries> {
    let results: Vec<Result<PhysicalEstimate>> = grid.par_iter().map(|&x| eval(x)).collect();
    let mut samples = Vec::with_capacity(grid.len());
    let mut termination = Termination::GridExhausted;
    for (&x, result) in grid.iter().zip(results) {
        match result {
            Ok(estimate) => samples.push(SweepSample { x, estimate }),
            Err(Error::TargetUnreachable { .. }) => {
                termination = Termination::TimeOptimalLimit;
                break;
            }
            Err(e) if e.is_infeasible() => {
                termination = Termination::CalibrationInfeasible;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(SweepSeries {
        axis_name: axis_name.to_string(),
        samples,
        termination,
    })
}

/// Minimum qubits meeting `target_s` at each code cycle time.
///
/// A reaction time pinned in the template is kept; otherwise it follows the
/// code cycle time.
pub fn sweep_code_cycle(
    estimator: &Estimator,
    spec: &LogicalRequirements,
    template: &HardwareProfile,
    cc_grid: &[f64],
    target_s: f64,
    family: StrategyFamily,
    budget: &ErrorBudget,
) -> Result<SweepSeries> {
    check_grid(cc_grid)?;
    if cc_grid[0] <= 0.0 {
        return Err(Error::InvalidInput(
            "code cycle times must be positive".into(),
        ));
    }
    spec.validate()?;
    budget.validate()?;
    collect_series("code_cycle_s", cc_grid, |cc| {
        let profile = HardwareProfile {
            code_cycle_s: cc,
            ..*template
        };
        profile.validate()?;
        estimator.min_qubits_for_runtime(spec, &profile, target_s, family, budget)
    })
}

/// Minimum qubits meeting `target_s` at each physical error rate.
pub fn sweep_physical_error(
    estimator: &Estimator,
    spec: &LogicalRequirements,
    template: &HardwareProfile,
    p_grid: &[f64],
    target_s: f64,
    family: StrategyFamily,
    budget: &ErrorBudget,
) -> Result<SweepSeries> {
    check_grid(p_grid)?;
    if p_grid[0] <= 0.0 || p_grid[p_grid.len() - 1] >= THRESHOLD {
        return Err(Error::InvalidInput(format!(
            "physical error rates must lie in (0, {THRESHOLD})"
        )));
    }
    spec.validate()?;
    budget.validate()?;
    collect_series("physical_error_prob", p_grid, |p| {
        let profile = HardwareProfile {
            physical_error_rate: p,
            ..*template
        };
        estimator.min_qubits_for_runtime(spec, &profile, target_s, family, budget)
    })
}

/// Regimes of the optimal measurement depth as the gate count grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    /// A single beat-limited block already meets the target.
    NoParallelization,
    /// Few units, so the optimum jumps with unit-count granularity.
    Oscillating,
    Equilibrium,
    /// Only the most parallel layers meet the target.
    Saturated,
}

/// Cheapest measurement depth for a fixed gate count and target runtime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DepthOptimum {
    /// T gates per layer at the optimum; 0 when no parallelisation is needed.
    #[serde(rename = "t_layer_count")]
    pub t_layer: f64,
    /// Measurement depth over T count.
    #[serde(rename = "depth_ratio_factor")]
    pub depth_ratio: f64,
    pub phase: Phase,
    pub estimate: PhysicalEstimate,
}

/// Scan T gates per layer on a log grid (capped at `n` by default) and return
/// the GoSC configuration with the fewest qubits meeting `target_s`.
///
/// Ties keep the smallest T per layer.
pub fn optimal_t_layer(
    estimator: &Estimator,
    n: u64,
    t_count: u64,
    profile: &HardwareProfile,
    target_s: f64,
    budget: &ErrorBudget,
) -> Result<DepthOptimum> {
    if n == 0 || t_count == 0 {
        return Err(Error::InvalidInput(
            "logical qubits and T count must be positive".into(),
        ));
    }
    let settings = estimator.config().sweep;
    let cap = if settings.cap_layer_at_logical_qubits {
        n.min(t_count)
    } else {
        t_count
    };
    let grid = log_grid(1.0, cap as f64, settings.points_per_decade)?;
    let spec_at = |t_layer: f64| {
        let depth = (t_count as f64 / t_layer).ceil().max(1.0) as u64;
        LogicalRequirements::with_depth(n, t_count, depth)
    };

    let shallowest = spec_at(grid[grid.len() - 1]);
    let beat = estimator.estimate_beat_limited(&shallowest, profile, budget)?;
    if beat.runtime_s <= target_s {
        return Ok(DepthOptimum {
            t_layer: 0.0,
            depth_ratio: shallowest.measurement_depth()? as f64 / t_count as f64,
            phase: Phase::NoParallelization,
            estimate: beat,
        });
    }

    let results: Vec<Option<PhysicalEstimate>> = grid
        .par_iter()
        .map(|&t_layer| {
            match estimator.min_qubits_for_runtime(
                &spec_at(t_layer),
                profile,
                target_s,
                StrategyFamily::GoscUnits,
                budget,
            ) {
                Ok(e) => Ok(Some(e)),
                Err(e) if e.is_infeasible() => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;

    let mut best: Option<(usize, PhysicalEstimate)> = None;
    for (i, result) in results.iter().enumerate() {
        if let Some(e) = result {
            if best.is_none_or(|(_, b)| e.total_physical_qubits < b.total_physical_qubits) {
                best = Some((i, *e));
            }
        }
    }
    let Some((index, estimate)) = best else {
        return Err(Error::TargetUnreachable {
            target_s,
            best_s: shallowest.measurement_depth()? as f64 * profile.reaction_time(),
        });
    };

    let first_feasible = results.iter().position(Option::is_some).unwrap_or(index);
    let phase = if index == first_feasible && first_feasible > 0 {
        Phase::Saturated
    } else if estimate.unit_count < settings.equilibrium_min_units {
        Phase::Oscillating
    } else {
        Phase::Equilibrium
    };
    let depth = spec_at(grid[index]).measurement_depth()?;
    Ok(DepthOptimum {
        t_layer: grid[index],
        depth_ratio: depth as f64 / t_count as f64,
        phase,
        estimate,
    })
}

/// Mean optimal T per layer over the equilibrium-phase optima among
/// `t_counts`, or `None` if none of them is in equilibrium.
pub fn equilibrium_t_layer(
    estimator: &Estimator,
    n: u64,
    t_counts: &[u64],
    profile: &HardwareProfile,
    target_s: f64,
    budget: &ErrorBudget,
) -> Result<Option<f64>> {
    let mut layers = Vec::new();
    for &t_count in t_counts {
        match optimal_t_layer(estimator, n, t_count, profile, target_s, budget) {
            Ok(opt) if opt.phase == Phase::Equilibrium => layers.push(opt.t_layer),
            Ok(_) => {}
            Err(e) if e.is_infeasible() => {}
            Err(e) => return Err(e),
        }
    }
    if layers.is_empty() {
        return Ok(None);
    }
    Ok(Some(layers.iter().sum::<f64>() / layers.len() as f64))
}

/// `y = coefficient * x^exponent`, fitted on log-log axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerLawFit {
    #[serde(rename = "coefficient_factor")]
    pub coefficient: f64,
    #[serde(rename = "exponent_factor")]
    pub exponent: f64,
    /// Root-mean-square residual in natural-log units.
    #[serde(rename = "rms_log_residual_factor")]
    pub residual: f64,
}

impl PowerLawFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficient * x.powf(self.exponent)
    }
}

/// Least-squares power law through `(N, T_layer)` points.
pub fn equilibrium_fit(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "a power-law fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if points
        .iter()
        .any(|&(x, y)| !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()))
    {
        return Err(Error::InvalidInput(
            "power-law fit needs positive finite points".into(),
        ));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidInput(
            "power-law fit needs at least two distinct x values".into(),
        ));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let exponent = sxy / sxx;
    let intercept = mean_y - exponent * mean_x;
    let sse: f64 = logs
        .iter()
        .map(|p| (p.1 - intercept - exponent * p.0).powi(2))
        .sum();
    Ok(PowerLawFit {
        coefficient: intercept.exp(),
        exponent,
        residual: (sse / k).sqrt(),
    })
}

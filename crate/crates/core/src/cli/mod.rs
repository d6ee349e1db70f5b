// Copyright 2026 The ftqc-estimator Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or invalid input,
//! 3 infeasible configuration.

pub mod format;
pub mod scenario;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::factories::{calibrate_autoccz, calibrate_best_t_factory, per_state_budget};
use crate::model::{device_area, ErrorBudget, HardwareProfile};
use crate::strategies::{Estimator, FactoryDesign, Parallelism, StrategyConfig, StrategyFamily};
use crate::sweep::{
    equilibrium_fit, equilibrium_t_layer, log_grid, optimal_t_layer, sweep_code_cycle,
    sweep_physical_error, PowerLawFit,
};

use scenario::{load_model_config, load_scenario, parse_count, parse_duration, Scenario};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(e) if e.is_infeasible() => 3,
            CliError::Domain(_) => 2,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
            CliError::Domain(e) => e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Beat,
    Gosc,
    Autoccz,
}

impl StrategyArg {
    fn family(self) -> StrategyFamily {
        match self {
            StrategyArg::Beat => StrategyFamily::BeatLimited,
            StrategyArg::Gosc => StrategyFamily::GoscUnits,
            StrategyArg::Autoccz => StrategyFamily::AutoCcz,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FactoryKind {
    Autoccz,
    T,
}

#[derive(Debug, Parser)]
#[command(
    name = "ftqc",
    version,
    about = "Surface-code resource estimates for fault-tolerant algorithms"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: OutputFormat,
    /// Model constants file; overrides the FTQC_MODEL_CONFIG variable.
    #[arg(long, global = true)]
    model_config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    /// Preset name (femoco, bitcoin-ec256) or scenario JSON file.
    #[arg(long)]
    scenario: String,
    /// Measurement depth as a fraction of the non-Clifford gate count.
    #[arg(long, conflicts_with = "depth")]
    depth_fraction: Option<f64>,
    /// Measurement depth in layers.
    #[arg(long, value_parser = parse_count)]
    depth: Option<u64>,
    /// Topological failure budget; defaults to the scenario's (0.01)
    #[arg(long)]
    topo_budget: Option<f64>,
    /// Distillation failure budget; defaults to the scenario's (0.05)
    #[arg(long)]
    dist_budget: Option<f64>,
}

impl ScenarioArgs {
    fn resolve(&self) -> Result<(Scenario, ErrorBudget), CliError> {
        let mut scenario = load_scenario(&self.scenario)?;
        if let Some(f) = self.depth_fraction {
            scenario.logical = scenario.logical.with_depth_fraction(f);
        }
        if let Some(d) = self.depth {
            scenario.logical = scenario.logical.with_measurement_depth(d);
        }
        if scenario.logical.measurement_depth.is_none() && scenario.logical.depth_fraction.is_none()
        {
            return Err(CliError::Usage(format!(
                "scenario '{}' has no measurement depth; pass --depth-fraction or --depth",
                scenario.name
            )));
        }
        scenario.logical.validate()?;
        let budget = ErrorBudget::new(
            self.topo_budget.unwrap_or(scenario.budget.topological),
            self.dist_budget.unwrap_or(scenario.budget.distillation),
        )?;
        Ok((scenario, budget))
    }
}

#[derive(Debug, Args)]
struct HardwareArgs {
    /// Code cycle time (seconds, or with a us/ms/s/h/day suffix).
    #[arg(long, value_parser = parse_duration)]
    cc: f64,
    /// Physical error rate per operation.
    #[arg(long)]
    p: f64,
    /// Reaction time; defaults to CC/4 + 10us.
    #[arg(long, value_parser = parse_duration)]
    rt: Option<f64>,
}

impl HardwareArgs {
    fn profile(&self) -> Result<HardwareProfile, CliError> {
        let profile = HardwareProfile::new(self.cc, self.p)?;
        Ok(match self.rt {
            Some(rt) => profile.with_reaction_time(rt)?,
            None => profile,
        })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate one strategy configuration.
    Estimate {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        hardware: HardwareArgs,
        #[arg(long, value_enum, default_value = "autoccz")]
        strategy: StrategyArg,
        /// AutoCCZ factory count; time-optimal if omitted.
        #[arg(long, value_parser = parse_count, conflicts_with = "units")]
        factories: Option<u64>,
        /// GoSC unit count; time-optimal if omitted.
        #[arg(long, value_parser = parse_count)]
        units: Option<u64>,
    },
    /// Fewest qubits finishing within a target runtime.
    MinQubits {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        hardware: HardwareArgs,
        /// Runtime target (seconds, or with a us/ms/s/h/day suffix)
        #[arg(long, value_parser = parse_duration)]
        target: f64,
        #[arg(long, value_enum, default_value = "autoccz")]
        strategy: StrategyArg,
    },
    /// Fastest configuration within a qubit budget, or the time-optimal one.
    MaxSpeed {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        hardware: HardwareArgs,
        /// Physical qubit budget; defaults to the profile limit
        #[arg(long, value_parser = parse_count)]
        qubits: Option<u64>,
        #[arg(long, value_enum, default_value = "autoccz")]
        strategy: StrategyArg,
    },
    /// Minimum qubits against code cycle time.
    SweepCc {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Physical error rate per operation
        #[arg(long)]
        p: f64,
        /// Runtime target (seconds, or with a us/ms/s/h/day suffix)
        #[arg(long, value_parser = parse_duration)]
        target: f64,
        #[arg(long, value_parser = parse_duration, default_value = "1e-8")]
        from: f64,
        #[arg(long, value_parser = parse_duration, default_value = "1e-3")]
        to: f64,
        /// Grid points per decade; defaults to the model config
        #[arg(long)]
        points_per_decade: Option<u32>,
        #[arg(long, value_enum, default_value = "autoccz")]
        strategy: StrategyArg,
        /// Also write the series as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum qubits against physical error rate.
    SweepError {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Code cycle time (seconds, or with a us/ms/s/h/day suffix)
        #[arg(long, value_parser = parse_duration)]
        cc: f64,
        /// Runtime target (seconds, or with a us/ms/s/h/day suffix)
        #[arg(long, value_parser = parse_duration)]
        target: f64,
        #[arg(long, default_value_t = 1e-5)]
        from: f64,
        #[arg(long, default_value_t = 5e-3)]
        to: f64,
        /// Grid points per decade; defaults to the model config
        #[arg(long)]
        points_per_decade: Option<u32>,
        #[arg(long, value_enum, default_value = "autoccz")]
        strategy: StrategyArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cheapest measurement depth for GoSC units; with several sizes and
    /// T counts, fit a power law to the equilibrium optima.
    OptimizeDepth {
        /// Logical qubit counts.
        #[arg(long, value_parser = parse_count, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        /// T counts.
        #[arg(long, value_parser = parse_count, value_delimiter = ',', required = true)]
        t_count: Vec<u64>,
        #[command(flatten)]
        hardware: HardwareArgs,
        /// Runtime target (seconds, or with a us/ms/s/h/day suffix)
        #[arg(long, value_parser = parse_duration)]
        target: f64,
    },
    /// Calibrate a distillation factory for a number of output states.
    CalibrateFactory {
        #[arg(long, value_enum, default_value = "autoccz")]
        kind: FactoryKind,
        /// Physical error rate per operation
        #[arg(long)]
        p: f64,
        /// Number of states the factory must supply.
        #[arg(long, value_parser = parse_count)]
        states: u64,
        #[arg(long, default_value_t = 0.05)]
        dist_budget: f64,
    },
    /// Side length of a square device.
    Area {
        /// Physical qubit count
        #[arg(long, value_parser = parse_count)]
        qubits: u64,
        /// Area per physical qubit in square metres.
        #[arg(long)]
        density: f64,
    },
}

/// Result of running the CLI on an argument vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct FactoryReport {
    state_count: u64,
    per_state_budget_prob: f64,
    design: FactoryDesign,
}

#[derive(Serialize)]
struct AreaReport {
    total_physical_qubits: u64,
    area_per_qubit_m2: f64,
    side_m: f64,
    area_m2: f64,
}

#[derive(Serialize)]
struct FitPoint {
    logical_qubits: u64,
    t_layer_count: f64,
}

#[derive(Serialize)]
struct FitReport {
    points: Vec<FitPoint>,
    fit: PowerLawFit,
}

/// Parse `argv` (program name first) and run the command.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if e.use_stderr() {
                CommandOutput {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandOutput {
                    exit_code: code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => CommandOutput {
            exit_code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => CommandOutput {
            exit_code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message()),
        },
    }
}

fn render<T: Serialize>(format: OutputFormat, value: &T) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => format::to_json(value),
        OutputFormat::Table => format::to_table(value),
    }
}

fn strategy_config(strategy: StrategyArg, count: Option<u64>) -> StrategyConfig {
    let parallelism = count.map_or(Parallelism::Auto, Parallelism::Count);
    match strategy {
        StrategyArg::Beat => StrategyConfig::BeatLimited,
        StrategyArg::Gosc => StrategyConfig::GoscUnits(parallelism),
        StrategyArg::Autoccz => StrategyConfig::AutoCcz(parallelism),
    }
}

fn write_csv_file(series: &crate::sweep::SweepSeries, path: &PathBuf) -> Result<(), CliError> {
    let file = std::fs::File::create(path)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
    format::write_csv(series, std::io::BufWriter::new(file))
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let config = load_model_config(cli.model_config.as_deref())?;
    let estimator = Estimator::new(config)?;
    let fmt = cli.format;
    match &cli.command {
        Command::Estimate {
            scenario,
            hardware,
            strategy,
            factories,
            units,
        } => {
            let (s, budget) = scenario.resolve()?;
            let count = match strategy {
                StrategyArg::Autoccz => *factories,
                StrategyArg::Gosc => *units,
                StrategyArg::Beat => None,
            };
            if (factories.is_some() && *strategy != StrategyArg::Autoccz)
                || (units.is_some() && *strategy != StrategyArg::Gosc)
            {
                return Err(CliError::Usage(
                    "--factories applies to autoccz and --units to gosc".into(),
                ));
            }
            let e = estimator.estimate(
                &s.logical,
                &hardware.profile()?,
                strategy_config(*strategy, count),
                &budget,
            )?;
            render(fmt, &e)
        }
        Command::MinQubits {
            scenario,
            hardware,
            target,
            strategy,
        } => {
            let (s, budget) = scenario.resolve()?;
            let e = estimator.min_qubits_for_runtime(
                &s.logical,
                &hardware.profile()?,
                *target,
                strategy.family(),
                &budget,
            )?;
            render(fmt, &e)
        }
        Command::MaxSpeed {
            scenario,
            hardware,
            qubits,
            strategy,
        } => {
            let (s, budget) = scenario.resolve()?;
            let profile = hardware.profile()?;
            let e = match qubits.or(profile.max_physical_qubits) {
                Some(q) => estimator.runtime_for_qubit_budget(
                    &s.logical,
                    &profile,
                    q,
                    strategy.family(),
                    &budget,
                )?,
                None => estimator.fastest(&s.logical, &profile, strategy.family(), &budget)?,
            };
            render(fmt, &e)
        }
        Command::SweepCc {
            scenario,
            p,
            target,
            from,
            to,
            points_per_decade,
            strategy,
            out,
        } => {
            let (s, budget) = scenario.resolve()?;
            let ppd = points_per_decade.unwrap_or(config.sweep.points_per_decade);
            let grid = log_grid(*from, *to, ppd)?;
            let template = HardwareProfile::new(grid[0], *p)?;
            let series = sweep_code_cycle(
                &estimator,
                &s.logical,
                &template,
                &grid,
                *target,
                strategy.family(),
                &budget,
            )?;
            if let Some(path) = out {
                write_csv_file(&series, path)?;
            }
            render(fmt, &series)
        }
        Command::SweepError {
            scenario,
            cc,
            target,
            from,
            to,
            points_per_decade,
            strategy,
            out,
        } => {
            let (s, budget) = scenario.resolve()?;
            let ppd = points_per_decade.unwrap_or(config.sweep.points_per_decade);
            let grid = log_grid(*from, *to, ppd)?;
            let template = HardwareProfile::new(*cc, grid[0])?;
            let series = sweep_physical_error(
                &estimator,
                &s.logical,
                &template,
                &grid,
                *target,
                strategy.family(),
                &budget,
            )?;
            if let Some(path) = out {
                write_csv_file(&series, path)?;
            }
            render(fmt, &series)
        }
        Command::OptimizeDepth {
            n,
            t_count,
            hardware,
            target,
        } => {
            let profile = hardware.profile()?;
            let budget = ErrorBudget::default();
            if let ([n], [t]) = (n.as_slice(), t_count.as_slice()) {
                let opt = optimal_t_layer(&estimator, *n, *t, &profile, *target, &budget)?;
                return render(fmt, &opt);
            }
            let mut points = Vec::new();
            for &size in n {
                if let Some(layer) =
                    equilibrium_t_layer(&estimator, size, t_count, &profile, *target, &budget)?
                {
                    points.push(FitPoint {
                        logical_qubits: size,
                        t_layer_count: layer,
                    });
                }
            }
            let xy: Vec<(f64, f64)> = points
                .iter()
                .map(|p| (p.logical_qubits as f64, p.t_layer_count))
                .collect();
            let fit = equilibrium_fit(&xy)?;
            render(fmt, &FitReport { points, fit })
        }
        Command::CalibrateFactory {
            kind,
            p,
            states,
            dist_budget,
        } => {
            if *states == 0 {
                return Err(CliError::Usage("--states must be positive".into()));
            }
            ErrorBudget::new(0.01, *dist_budget)?;
            let per_state = per_state_budget(*dist_budget, *states);
            let design = match kind {
                FactoryKind::Autoccz => {
                    FactoryDesign::AutoCcz(calibrate_autoccz(&config.factories, *p, per_state)?)
                }
                FactoryKind::T => FactoryDesign::TFactory(calibrate_best_t_factory(
                    &config.factories,
                    *p,
                    per_state,
                )?),
            };
            render(
                fmt,
                &FactoryReport {
                    state_count: *states,
                    per_state_budget_prob: per_state,
                    design,
                },
            )
        }
        Command::Area { qubits, density } => {
            if !(*density > 0.0 && density.is_finite()) {
                return Err(CliError::Usage("--density must be positive".into()));
            }
            let side = device_area(*qubits as f64, *density);
            render(
                fmt,
                &AreaReport {
                    total_physical_qubits: *qubits,
                    area_per_qubit_m2: *density,
                    side_m: side,
                    area_m2: side * side,
                },
            )
        }
    }
}

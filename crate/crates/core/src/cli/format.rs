// Copyright 2026 The ftqc-estimator Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON, aligned-table and CSV output.
//!
//! The table is the JSON document flattened to dotted key paths, so both
//! formats always carry the same values.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::strategies::Regime;
use crate::sweep::SweepSeries;

use super::CliError;

pub const CSV_COLUMNS: [&str; 9] = [
    "x",
    "total_physical_qubits",
    "runtime_s",
    "data_distance",
    "factory_count",
    "unit_count",
    "regime",
    "topo_error",
    "dist_error",
];

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn to_table<T: Serialize>(value: &T) -> Result<String, CliError> {
    let value = serde_json::to_value(value).map_err(|e| CliError::Io(e.to_string()))?;
    let mut rows = Vec::new();
    flatten("", &value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (key, val) in rows {
        out.push_str(&format!("{key:<width$}  {val}\n"));
    }
    Ok(out)
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(k), v, rows);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                rows.push((prefix.to_string(), "[]".into()));
            }
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::Beat => "beat",
        Regime::Tick => "tick",
        Regime::Reaction => "reaction",
    }
}

/// One row per sample, in the fixed column order.
pub fn write_csv<W: Write>(series: &SweepSeries, out: W) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Io(e.to_string());
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_COLUMNS).map_err(io)?;
    for s in &series.samples {
        let e = &s.estimate;
        writer
            .write_record([
                s.x.to_string(),
                e.total_physical_qubits.to_string(),
                e.runtime_s.to_string(),
                e.data_distance.get().to_string(),
                e.factory_count.to_string(),
                e.unit_count.to_string(),
                regime_name(e.limiting_regime).to_string(),
                e.failure.topological_error.to_string(),
                e.failure.distillation_error.to_string(),
            ])
            .map_err(io)?;
    }
    writer.flush().map_err(|e| CliError::Io(e.to_string()))
}

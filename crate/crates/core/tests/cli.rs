// Copyright 2026 The ftqc-estimator Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use ftqc_core::cli::format::CSV_COLUMNS;
use ftqc_core::cli::run_command;
use ftqc_core::cli::scenario::{load_scenario, preset};
use ftqc_core::sweep::SweepSeries;
use ftqc_core::{DepthOptimum, PhysicalEstimate};
use serde_json::Value;

fn run(args: &[&str]) -> ftqc_core::cli::CommandOutput {
    run_command(std::iter::once("ftqc").chain(args.iter().copied()))
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

const SUFFIXES: [&str; 11] = [
    "_qubits",
    "_s",
    "_cycles",
    "_tiles",
    "_count",
    "_distance",
    "_prob",
    "_factor",
    "_m",
    "_m2",
    "_beats",
];

fn unsuffixed_numeric_keys(value: &Value, path: &str, out: &mut Vec<String>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                if v.is_number() && k != "x" && !SUFFIXES.iter().any(|s| k.ends_with(s)) {
                    out.push(format!("{path}.{k}"));
                }
                unsuffixed_numeric_keys(v, &format!("{path}.{k}"), out);
            }
        }
        Value::Array(items) => {
            for v in items {
                unsuffixed_numeric_keys(v, path, out);
            }
        }
        _ => {}
    }
}

#[test]
fn estimate_matches_golden_output() {
    let r = run(&[
        "estimate",
        "--scenario",
        "bitcoin-ec256",
        "--cc",
        "1e-6",
        "--p",
        "1e-3",
        "--strategy",
        "autoccz",
        "--factories",
        "1",
    ]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, golden("estimate_bitcoin_autoccz_1f.json"));

    let r = run(&[
        "estimate",
        "--scenario",
        "femoco",
        "--depth-fraction",
        "0.01",
        "--cc",
        "235us",
        "--p",
        "1e-3",
        "--strategy",
        "gosc",
        "--units",
        "1000",
    ]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, golden("estimate_femoco_gosc_1000u.json"));
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [
        vec![
            "estimate",
            "--scenario",
            "bitcoin-ec256",
            "--cc",
            "1us",
            "--p",
            "1e-3",
        ],
        vec![
            "estimate",
            "--scenario",
            "bitcoin-ec256",
            "--cc",
            "1us",
            "--p",
            "1e-3",
            "--strategy",
            "beat",
        ],
        vec![
            "estimate",
            "--scenario",
            "femoco",
            "--depth-fraction",
            "0.01",
            "--cc",
            "235us",
            "--p",
            "1e-3",
            "--strategy",
            "gosc",
        ],
    ] {
        let r = run(&args);
        assert_eq!(r.exit_code, 0, "{}", r.stderr);
        let e: PhysicalEstimate = serde_json::from_str(&r.stdout).unwrap();
        let again = format!("{}\n", serde_json::to_string_pretty(&e).unwrap());
        assert_eq!(again, r.stdout);
    }

    let r = run(&[
        "sweep-error",
        "--scenario",
        "bitcoin-ec256",
        "--cc",
        "1us",
        "--target",
        "1h",
        "--points-per-decade",
        "5",
    ]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    let s: SweepSeries = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(
        format!("{}\n", serde_json::to_string_pretty(&s).unwrap()),
        r.stdout
    );
}

#[test]
fn numeric_keys_carry_units() {
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "estimate",
            "--scenario",
            "femoco",
            "--depth-fraction",
            "0.01",
            "--cc",
            "235us",
            "--p",
            "1e-3",
            "--strategy",
            "gosc",
        ],
        vec![
            "estimate",
            "--scenario",
            "bitcoin-ec256",
            "--cc",
            "1us",
            "--p",
            "1e-3",
            "--strategy",
            "beat",
        ],
        vec![
            "min-qubits",
            "--scenario",
            "bitcoin-ec256",
            "--cc",
            "1us",
            "--p",
            "1e-3",
            "--target",
            "1h",
        ],
        vec![
            "sweep-cc",
            "--scenario",
            "bitcoin-ec256",
            "--p",
            "1e-3",
            "--target",
            "1day",
            "--points-per-decade",
            "2",
        ],
        vec![
            "calibrate-factory",
            "--kind",
            "t",
            "--p",
            "1e-3",
            "--states",
            "1e9",
        ],
        vec!["calibrate-factory", "--p", "1e-3", "--states", "1e9"],
        vec!["area", "--qubits", "40e6", "--density", "5.36e-6"],
        vec![
            "optimize-depth",
            "--n",
            "500",
            "--t-count",
            "1e11",
            "--cc",
            "1us",
            "--p",
            "1e-3",
            "--target",
            "1day",
        ],
    ];
    for args in commands {
        let r = run(&args);
        assert_eq!(r.exit_code, 0, "{args:?}: {}", r.stderr);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        let mut bad = Vec::new();
        unsuffixed_numeric_keys(&v, "", &mut bad);
        assert!(bad.is_empty(), "{args:?}: {bad:?}");
    }
}

#[test]
fn table_carries_the_same_values_as_json() {
    let base = [
        "min-qubits",
        "--scenario",
        "bitcoin-ec256",
        "--cc",
        "1us",
        "--p",
        "1e-3",
        "--target",
        "1h",
    ];
    let json = run(&base);
    let mut args = base.to_vec();
    args.extend(["--format", "table"]);
    let table = run(&args);
    assert_eq!(table.exit_code, 0);
    let v: Value = serde_json::from_str(&json.stdout).unwrap();
    let rows: Vec<(&str, &str)> = table
        .stdout
        .lines()
        .map(|l| {
            let (k, rest) = l.split_once(' ').unwrap();
            (k, rest.trim())
        })
        .collect();
    let mut leaves = 0;
    for (key, text) in &rows {
        let mut node = &v;
        for part in key.split('.') {
            node = &node[part];
        }
        let expected = match node {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        assert_eq!(*text, expected, "{key}");
        leaves += 1;
    }
    assert!(leaves >= 20);
}

#[test]
fn min_qubits_bitcoin_hour() {
    let r = run(&[
        "min-qubits",
        "--scenario",
        "bitcoin-ec256",
        "--cc",
        "1e-6",
        "--p",
        "1e-3",
        "--target",
        "3600",
    ]);
    assert_eq!(r.exit_code, 0);
    let e: PhysicalEstimate = serde_json::from_str(&r.stdout).unwrap();
    assert!(e.runtime_s <= 3600.0);
    assert!((e.total_physical_qubits as f64 / 35e6 - 1.0).abs() <= 0.4);
}

#[test]
fn area_anchor() {
    let r = run(&["area", "--qubits", "40e6", "--density", "5.36e-6"]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let side = v["side_m"].as_f64().unwrap();
    assert!((side - 14.6).abs() < 0.05);
}

#[test]
fn exit_codes() {
    // Usage: bad flags, bad values, missing depth, unknown preset.
    assert_eq!(run(&["frobnicate"]).exit_code, 2);
    assert_eq!(
        run(&["area", "--qubits", "10", "--density", "-1"]).exit_code,
        2
    );
    assert_eq!(
        run(&[
            "estimate",
            "--scenario",
            "femoco",
            "--cc",
            "1us",
            "--p",
            "1e-3"
        ])
        .exit_code,
        2
    );
    assert_eq!(
        run(&[
            "estimate",
            "--scenario",
            "bitcoin-ec256",
            "--cc",
            "1us",
            "--p",
            "0.02"
        ])
        .exit_code,
        2
    );
    assert_eq!(
        run(&[
            "estimate",
            "--scenario",
            "bitcoin-ec256",
            "--cc",
            "soon",
            "--p",
            "1e-3"
        ])
        .exit_code,
        2
    );
    // Domain infeasibility.
    let r = run(&["calibrate-factory", "--p", "5e-3", "--states", "1e10"]);
    assert_eq!(r.exit_code, 3);
    assert!(r.stderr.contains("calibration infeasible"));
    let r = run(&[
        "max-speed",
        "--scenario",
        "bitcoin-ec256",
        "--cc",
        "1us",
        "--p",
        "1e-3",
        "--qubits",
        "1000",
    ]);
    assert_eq!(r.exit_code, 3);
    let r = run(&[
        "estimate",
        "--scenario",
        "bitcoin-ec256",
        "--cc",
        "1us",
        "--p",
        "1e-3",
        "--strategy",
        "gosc",
        "--units",
        "2",
    ]);
    assert_eq!(r.exit_code, 3);
}

#[test]
fn presets_are_pinned() {
    let f = preset("femoco").unwrap();
    assert_eq!(f.logical.logical_qubits, 2196);
    assert_eq!(f.logical.toffoli_count, Some(6_700_000_000));
    assert_eq!(f.logical.t_count, None);
    assert_eq!(f.logical.measurement_depth, None);
    assert_eq!(f.logical.depth_fraction, None);

    let b = preset("bitcoin-ec256").unwrap();
    assert_eq!(b.logical.logical_qubits, 2871);
    assert_eq!(b.logical.t_count, Some(5_760_000_000));
    assert_eq!(b.logical.toffoli_count, None);
    assert_eq!(b.logical.measurement_depth, Some(18_800_000));

    for s in [f, b] {
        assert_eq!(s.budget.topological, 0.01);
        assert_eq!(s.budget.distillation, 0.05);
        assert!(!s.notes.is_empty());
    }
}

#[test]
fn scenario_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(
        &good,
        r#"{
  "version": 1,
  "name": "toy",
  "logical": {"logical_qubits": 100, "t_count": 1000000, "measurement_depth": 10000}
}"#,
    )
    .unwrap();
    let s = load_scenario(good.to_str().unwrap()).unwrap();
    assert_eq!(s.logical.logical_qubits, 100);
    assert_eq!(s.budget.topological, 0.01);
    let r = run(&[
        "estimate",
        "--scenario",
        good.to_str().unwrap(),
        "--cc",
        "1us",
        "--p",
        "1e-3",
    ]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);

    let unknown = dir.path().join("unknown.json");
    std::fs::write(
        &unknown,
        "{\n  \"version\": 1,\n  \"name\": \"toy\",\n  \"logical\": {\"logical_qubits\": 1, \"t_count\": 5, \"depth\": 1}\n}",
    )
    .unwrap();
    let err = load_scenario(unknown.to_str().unwrap()).unwrap_err();
    let msg = format!("{err:?}");
    assert!(msg.contains("depth") && msg.contains("line 4"), "{msg}");

    let malformed = dir.path().join("malformed.json");
    std::fs::write(&malformed, "{\n  \"version\": 1,\n  \"name\": \n}").unwrap();
    let msg = format!(
        "{:?}",
        load_scenario(malformed.to_str().unwrap()).unwrap_err()
    );
    assert!(msg.contains("line 4"), "{msg}");

    let old = dir.path().join("old.json");
    std::fs::write(&old, r#"{"version": 7, "name": "x", "logical": {"logical_qubits": 1, "t_count": 5, "measurement_depth": 1}}"#).unwrap();
    assert!(load_scenario(old.to_str().unwrap()).is_err());
}

#[test]
fn model_config_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    std::fs::write(&path, r#"{"factories": {"footprint_multiplier": 2.0}}"#).unwrap();
    let base = ["calibrate-factory", "--p", "1e-3", "--states", "2.88e9"];
    let plain: Value = serde_json::from_str(&run(&base).stdout).unwrap();
    let mut args = base.to_vec();
    args.extend(["--model-config", path.to_str().unwrap()]);
    let r = run(&args);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    let scaled: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(
        scaled["design"]["footprint_qubits"].as_u64().unwrap(),
        2 * plain["design"]["footprint_qubits"].as_u64().unwrap()
    );

    std::fs::write(
        &path,
        r#"{"factories": {"footprint_multiplier": 2.0, "colour": 1}}"#,
    )
    .unwrap();
    assert_eq!(run(&args).exit_code, 2);
}

#[test]
fn sweep_csv_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let r = run(&[
        "sweep-error",
        "--scenario",
        "bitcoin-ec256",
        "--cc",
        "1us",
        "--target",
        "1h",
        "--from",
        "1e-4",
        "--to",
        "5e-3",
        "--points-per-decade",
        "20",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    let series: SweepSeries = serde_json::from_str(&r.stdout).unwrap();
    let mut reader = csv::Reader::from_path(&out).unwrap();
    let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(headers, CSV_COLUMNS);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), series.samples.len());
    for (row, sample) in rows.iter().zip(&series.samples) {
        assert_eq!(row[0].parse::<f64>().unwrap(), sample.x);
        assert_eq!(
            row[1].parse::<u64>().unwrap(),
            sample.estimate.total_physical_qubits
        );
        assert_eq!(row[2].parse::<f64>().unwrap(), sample.estimate.runtime_s);
    }
}

#[test]
fn optimize_depth_orders_sizes() {
    let ratio = |n: &str, t: &str| {
        let r = run(&[
            "optimize-depth",
            "--n",
            n,
            "--t-count",
            t,
            "--cc",
            "1us",
            "--p",
            "1e-3",
            "--target",
            "1day",
        ]);
        assert_eq!(r.exit_code, 0, "{}", r.stderr);
        serde_json::from_str::<DepthOptimum>(&r.stdout)
            .unwrap()
            .depth_ratio
    };
    // Same space-time volume: the smaller register wants relatively deeper
    // circuits.
    assert!(ratio("500", "1e11") > ratio("2000", "2.5e10"));
}

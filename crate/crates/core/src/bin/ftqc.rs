// Copyright 2026 The ftqc-estimator Authors
// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = ftqc_core::cli::run_command(std::env::args_os());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(u8::try_from(out.exit_code).unwrap_or(1))
}

// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use clap::Parser;
use qcadfs::cli::{main_with_args, Args};

fn main() -> ExitCode {
    ExitCode::from(main_with_args(&Args::parse()))
}

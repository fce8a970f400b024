// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

//! Simulation toolkit for quantum-dot cellular automata (QCA) gates acting on
//! spin pairs encoded in a decoherence-free subspace.
//!
//! Logic qubit `k` is the physical pair `(2k, 2k+1)` (top-line dot `i`,
//! bottom-line dot `i′`) with `|0_L⟩ = |01⟩` and `|1_L⟩ = |10⟩`.

pub mod angle;
pub mod circuit;
pub mod cli;
pub mod decoupling;
pub mod dfs;
pub mod error;
pub mod gates;
pub mod linalg;
pub mod noise;
pub mod qca;

pub use error::{QcaError, Result};

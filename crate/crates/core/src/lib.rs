// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! Pulse compiler and exact simulator for single-excitation-subspace (SES)
//! quantum computing on a complete graph of `n` qubits.
//!
//! In the SES the chip is an `n`-level system whose Hamiltonian is programmed
//! entry by entry as `g_max K` with `K` real symmetric and `|K_ij| <= 1`. This
//! crate turns unitaries, Hamiltonians, target states and observables into
//! sequences of such pulses and checks them by exact simulation:
//!
//! * [`pulse`]: time-optimal pulse for a real symmetric generator.
//! * [`decompose`]: KAK and ABA factorizations; any unitary in three pulses.
//! * [`prep`]: state preparation, linear-depth or three pulses.
//! * [`observables`]: expectation values from occupation probabilities.
//! * [`sim`]: exact pure/mixed-state evolution and seeded readout.
//! * [`formats`]: JSON file formats for matrices, states and schedules.

pub mod decompose;
pub mod error;
pub mod fixtures;
pub mod formats;
pub mod linalg;
pub mod observables;
pub mod prep;
pub mod pulse;
pub mod random;
pub mod sim;
pub mod state;
pub mod stats;

#[cfg(test)]
mod testutil;

pub use decompose::{
    aba_decompose, aba_decompose_with, compile_hamiltonian, compile_unitary, compile_unitary_aba, kak_decompose,
    AbaDecomposition, KakDecomposition, PhaseBranch,
};
pub use error::{Result, SesError};
pub use linalg::{ComplexMatrix, OrthogonalMatrix, RealDiagonal, RealMatrix, RealSymmetricMatrix};
pub use observables::{
    expectation_exact, expectation_protocol, spectral_decompose, ExpectationEstimate, Observable, Readout,
};
pub use prep::{compiled_prep_unitary, prepare_state_schedule, prepare_state_schedule_with, PrepMode, PrepPlan};
pub use pulse::{DeviceParams, PulseSchedule, PulseStep};
pub use sim::{measure, run_schedule, schedule_unitary, MeasurementRecord};
pub use state::{DensityMatrixState, QuantumState, SesState};

pub use num_complex::Complex64;

// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense matrices, Jacobi eigensolvers and generator exponentials.

mod eigen;
mod expm;
mod matrix;

pub use eigen::{
    hermitian_eig, principal_angle, simultaneous_diag, simultaneous_diag_real, symmetric_eig, unitary_diagonalize,
    SimultaneousEig, CLUSTER_TOL, COMMUTATOR_TOL, MAX_SWEEPS, UNITARY_TOL,
};
pub use expm::{expm_generator, global_phase_fidelity, nearest_unitary};
pub use matrix::{
    ComplexMatrix, OrthogonalMatrix, RealDiagonal, RealMatrix, RealSymmetricMatrix, ORTHOGONALITY_TOL, SYMMETRY_TOL,
};

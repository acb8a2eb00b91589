// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the compiler, simulator and file formats.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SesError {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not unitary (max |U^dag U - I| = {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("matrix is not hermitian (max |H - H^dag| = {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not symmetric (max |S - S^T| = {residual:e})")]
    NotSymmetric { residual: f64 },

    #[error("matrix is not orthogonal (max |Q^T Q - I| = {residual:e})")]
    OrthogonalityViolation { residual: f64 },

    #[error("matrices do not commute (max |PQ - QP| = {residual:e})")]
    CommutatorViolation { residual: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error("invalid pulse: {0}")]
    InvalidPulse(String),

    #[error("invalid device parameters: {0}")]
    InvalidDevice(String),

    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("target does not have uniform weights (max deviation {deviation:e})")]
    NonUniformWeights { deviation: f64 },

    #[error("state already has uniform weights")]
    AlreadyUniform,

    #[error("weight reduction exceeded {limit} iterations")]
    IterationOverflow { limit: usize },

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, SesError>;

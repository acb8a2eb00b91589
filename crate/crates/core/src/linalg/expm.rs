// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::eigen::{hermitian_eig, symmetric_eig};
use super::matrix::{ComplexMatrix, RealSymmetricMatrix};
use crate::error::{Result, SesError};

/// `exp(-i theta K)` for real symmetric `K`, through the eigendecomposition of `K`.
pub fn expm_generator(theta: f64, k: &RealSymmetricMatrix) -> Result<ComplexMatrix> {
    if !theta.is_finite() {
        return Err(SesError::InvalidPulse(format!("non-finite angle {theta}")));
    }
    let n = k.dim();
    if theta == 0.0 {
        return Ok(ComplexMatrix::identity(n));
    }
    if k.max_off_diagonal() == 0.0 {
        let phases: Vec<Complex64> = k.diagonal().iter().map(|&x| Complex64::from_polar(1.0, -theta * x)).collect();
        return Ok(ComplexMatrix::from_diagonal(&phases));
    }
    let (q, lam) = symmetric_eig(k)?;
    let phases: Vec<Complex64> = lam.values().iter().map(|&x| Complex64::from_polar(1.0, -theta * x)).collect();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| (0..n).map(|m| phases[m] * (q[(i, m)] * q[(j, m)])).sum()))
}

/// Closest unitary in Frobenius norm: the polar factor `M (M^dag M)^(-1/2)`.
pub fn nearest_unitary(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let gram = &m.adjoint() * m;
    let (v, lam) = hermitian_eig(&gram)?;
    if lam.values().first().is_some_and(|&x| x <= 1e-12) {
        return Err(SesError::InvalidMatrix("matrix is (near) singular".into()));
    }
    let n = m.rows();
    let inv_sqrt: Vec<f64> = lam.values().iter().map(|x| 1.0 / x.sqrt()).collect();
    let root = ComplexMatrix::from_fn(n, n, |i, j| (0..n).map(|k| v[(i, k)] * inv_sqrt[k] * v[(j, k)].conj()).sum());
    Ok(m * &root)
}

/// Phase-insensitive operator agreement `|Tr(U^dag W)| / n`, clamped to `[0, 1]`.
pub fn global_phase_fidelity(u: &ComplexMatrix, w: &ComplexMatrix) -> Result<f64> {
    if !u.is_square() {
        return Err(SesError::InvalidMatrix("fidelity needs square matrices".into()));
    }
    if (u.rows(), u.cols()) != (w.rows(), w.cols()) {
        return Err(SesError::DimensionMismatch { expected: u.rows(), actual: w.rows() });
    }
    let n = u.rows();
    let overlap: Complex64 = u.entries().iter().zip(w.entries()).map(|(a, b)| a.conj() * b).sum();
    Ok((overlap.norm() / n as f64).min(1.0))
}

// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! Pure and mixed states of the single-excitation subspace.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, SesError};
use crate::linalg::{hermitian_eig, ComplexMatrix};

/// Normalization tolerance on `sum |a_i|^2`.
pub const NORM_TOL: f64 = 1e-10;

/// Tolerances for [`DensityMatrixState`].
pub const DENSITY_HERMITIAN_TOL: f64 = 1e-10;
pub const DENSITY_TRACE_TOL: f64 = 1e-10;
pub const DENSITY_PSD_TOL: f64 = 1e-9;

/// A normalized amplitude vector over the basis states `|1), ..., |n)`.
///
/// Indices are zero-based in the API: `amplitudes()[0]` is the amplitude of `|1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SesState {
    amplitudes: Vec<Complex64>,
}

impl SesState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(SesError::InvalidMatrix("empty state".into()));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SesError::InvalidMatrix("non-finite amplitude".into()));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(SesError::NotNormalized { norm_sqr });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales any nonzero finite vector to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(SesError::NotNormalized { norm_sqr: norm * norm });
        }
        Self::new(amplitudes.into_iter().map(|z| z / norm).collect())
    }

    pub(crate) fn from_raw(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    /// The basis state with the excitation on qubit `index` (zero-based).
    pub fn basis(n: usize, index: usize) -> Self {
        assert!(index < n, "basis index {index} out of range for n = {n}");
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    /// `(|1) + ... + |n)) / sqrt(n)`.
    pub fn uniform(n: usize) -> Self {
        let a = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        Self { amplitudes: vec![a; n] }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Occupation probabilities `|a_i|^2`.
    pub fn weights(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Amplitude phases on `[0, 2 pi)`; zero for vanishing amplitudes.
    pub fn phases(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| unit_phase(*z)).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// Phase-insensitive overlap `|<self|other>|`.
    pub fn overlap(&self, other: &Self) -> f64 {
        self.inner(other).norm().min(1.0)
    }

    /// True when every weight is within `tol` of `1/n`.
    pub fn is_uniform_weight(&self, tol: f64) -> bool {
        let target = 1.0 / self.dim() as f64;
        self.weights().iter().all(|w| (w - target).abs() <= tol)
    }
}

/// Phase of `z` mapped into `[0, 2 pi)`.
pub fn unit_phase(z: Complex64) -> f64 {
    if z.norm() == 0.0 {
        return 0.0;
    }
    let mut t = z.arg();
    if t < 0.0 {
        t += 2.0 * PI;
    }
    if t >= 2.0 * PI {
        t = 0.0;
    }
    t
}

/// A density matrix over the single-excitation subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrixState {
    matrix: ComplexMatrix,
}

impl DensityMatrixState {
    /// Validates hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(SesError::InvalidDensityMatrix("not square".into()));
        }
        let herm = matrix.hermiticity_residual();
        if herm > DENSITY_HERMITIAN_TOL {
            return Err(SesError::InvalidDensityMatrix(format!("hermiticity residual {herm:e}")));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > DENSITY_TRACE_TOL || trace.im.abs() > DENSITY_TRACE_TOL {
            return Err(SesError::InvalidDensityMatrix(format!("trace {trace}")));
        }
        let (_, lam) = hermitian_eig(&matrix)?;
        if let Some(&min) = lam.values().first() {
            if min < -DENSITY_PSD_TOL {
                return Err(SesError::InvalidDensityMatrix(format!("negative eigenvalue {min:e}")));
            }
        }
        Ok(Self { matrix })
    }

    pub(crate) fn from_raw(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn from_pure(state: &SesState) -> Self {
        let a = state.amplitudes();
        Self { matrix: ComplexMatrix::from_fn(a.len(), a.len(), |i, j| a[i] * a[j].conj()) }
    }

    /// `I / n`.
    pub fn maximally_mixed(n: usize) -> Self {
        Self { matrix: ComplexMatrix::identity(n).scale(Complex64::new(1.0 / n as f64, 0.0)) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Occupation probabilities `(i|rho|i)`.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }
}

/// Either kind of state, for APIs that accept both.
#[derive(Clone, Debug, PartialEq)]
pub enum QuantumState {
    Pure(SesState),
    Mixed(DensityMatrixState),
}

impl QuantumState {
    pub fn dim(&self) -> usize {
        match self {
            Self::Pure(s) => s.dim(),
            Self::Mixed(r) => r.dim(),
        }
    }

    pub fn populations(&self) -> Vec<f64> {
        match self {
            Self::Pure(s) => s.weights(),
            Self::Mixed(r) => r.populations(),
        }
    }

    pub fn to_density(&self) -> DensityMatrixState {
        match self {
            Self::Pure(s) => DensityMatrixState::from_pure(s),
            Self::Mixed(r) => r.clone(),
        }
    }
}

impl From<SesState> for QuantumState {
    fn from(s: SesState) -> Self {
        Self::Pure(s)
    }
}

impl From<DensityMatrixState> for QuantumState {
    fn from(r: DensityMatrixState) -> Self {
        Self::Mixed(r)
    }
}

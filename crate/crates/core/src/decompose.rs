// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! KAK and ABA factorizations, and the unitary/Hamiltonian compilers built on them.
//!
//! Any `U` in `U(n)` factors as `O1 exp(-iD) O2^T` with real orthogonal `O1`, `O2`.
//! `O1` diagonalizes the real and imaginary parts of the symmetric unitary
//! `chi = U U^T` simultaneously. Feeding the eigenvector matrix `V` of
//! `U = V exp(-i Lambda) V^dag` through that factorization gives
//! `U = exp(-iA) exp(-iB) exp(iA)` with
//!
//! ```text
//! A = O1 D O1^T
//! B = (O1 O2^T) Lambda (O1 O2^T)^T
//! ```
//!
//! both real symmetric, so three standard-form pulses implement any unitary.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, SesError};
use crate::linalg::{
    expm_generator, hermitian_eig, principal_angle, simultaneous_diag_real, unitary_diagonalize, ComplexMatrix,
    OrthogonalMatrix, RealDiagonal, RealMatrix, RealSymmetricMatrix,
};
use crate::pulse::{compile_symmetric_generator, DeviceParams, PulseSchedule, PulseStep};

/// Unitarity tolerance on compiler inputs.
pub const UNITARY_TOL: f64 = 1e-8;

/// Orthogonality tolerance on the recovered `O2`.
pub const O2_ORTHOGONALITY_TOL: f64 = 1e-8;

/// `|U - U^T|_max` at or below this takes the one-pulse path.
pub const SYMMETRY_DETECT_TOL: f64 = 1e-10;

/// Hermiticity tolerance on Hamiltonian inputs.
pub const HERMITIAN_TOL: f64 = 1e-8;

/// `U = O1 diag(exp(-iD)) O2^T`.
#[derive(Clone, Debug, PartialEq)]
pub struct KakDecomposition {
    pub o1: OrthogonalMatrix,
    /// Phases on `(-pi/2, pi/2]`.
    pub d: RealDiagonal,
    pub o2: OrthogonalMatrix,
}

impl KakDecomposition {
    /// The same factorization with every phase moved onto `(-pi, 0]`:
    /// `D_k -> D_k - pi` for `D_k > 0`, compensated by negating column `k` of `O2`.
    pub fn with_nonpositive_phases(&self) -> Self {
        let n = self.o1.dim();
        let flip: Vec<bool> = self.d.values().iter().map(|&x| x > 0.0).collect();
        let d = self.d.values().iter().zip(&flip).map(|(&x, &f)| if f { x - PI } else { x }).collect();
        let o2 = RealMatrix::from_fn(n, n, |i, j| if flip[j] { -self.o2[(i, j)] } else { self.o2[(i, j)] });
        Self { o1: self.o1.clone(), d: RealDiagonal(d), o2: OrthogonalMatrix::new_unchecked(o2) }
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.o1.dim();
        let phases: Vec<Complex64> = self.d.values().iter().map(|&x| Complex64::from_polar(1.0, -x)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| (0..n).map(|k| phases[k] * (self.o1[(i, k)] * self.o2[(j, k)])).sum())
    }
}

/// `U = exp(-iA) exp(-iB) exp(iA)` up to global phase.
#[derive(Clone, Debug, PartialEq)]
pub struct AbaDecomposition {
    pub a: RealSymmetricMatrix,
    pub b: RealSymmetricMatrix,
}

impl AbaDecomposition {
    pub fn reconstruct(&self) -> Result<ComplexMatrix> {
        let ea = expm_generator(1.0, &self.a)?;
        let eb = expm_generator(1.0, &self.b)?;
        Ok(&(&ea * &eb) * &ea.adjoint())
    }
}

pub fn kak_decompose(u: &ComplexMatrix) -> Result<KakDecomposition> {
    u.check_unitary(UNITARY_TOL)?;
    let n = u.rows();
    let chi = u * &u.transpose();
    let re = RealSymmetricMatrix::symmetrize(&chi.re());
    let im = RealSymmetricMatrix::symmetrize(&chi.im());
    let (o1, re_vals, im_vals) = simultaneous_diag_real(&re, &im)?;

    // Diagonal of O1^T chi O1 is exp(-2iD).
    let d: Vec<f64> = (0..n)
        .map(|k| {
            let half = -0.5 * Complex64::new(re_vals[k], im_vals[k]).arg();
            if half <= -std::f64::consts::FRAC_PI_2 {
                half + PI
            } else {
                half
            }
        })
        .collect();

    // O2 = U^T O1 exp(iD), real up to rounding.
    let o2c = ComplexMatrix::from_fn(n, n, |i, j| {
        let s: Complex64 = (0..n).map(|k| u[(k, i)] * o1[(k, j)]).sum();
        s * Complex64::from_polar(1.0, d[j])
    });
    let imag = o2c.max_imag();
    if imag > O2_ORTHOGONALITY_TOL {
        return Err(SesError::OrthogonalityViolation { residual: imag });
    }
    let o2 = OrthogonalMatrix::with_tolerance(o2c.re(), O2_ORTHOGONALITY_TOL)?;
    Ok(KakDecomposition { o1, d: RealDiagonal(d), o2 })
}

/// Branch of the phases that become ABA generator eigenvalues.
///
/// Both give exact factorizations; they differ in pulse length.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PhaseBranch {
    /// `D` on `(-pi/2, pi/2]` and `Lambda` on `(-pi, pi]`: the shortest pulses.
    #[default]
    Principal,
    /// `D` on `(-pi, 0]` and `Lambda` on `(-2pi, 0]`.
    NonPositive,
}

/// Generators from the spectral data `U = V exp(-i Lambda) V^dag`.
fn aba_from_spectral(v: &ComplexMatrix, lambda: &[f64], branch: PhaseBranch) -> Result<AbaDecomposition> {
    let mut kak = kak_decompose(v)?;
    if branch == PhaseBranch::NonPositive {
        kak = kak.with_nonpositive_phases();
    }
    let a = kak.o1.conjugate_diagonal(kak.d.values());
    let w = OrthogonalMatrix::new_unchecked(&*kak.o1 * &kak.o2.transpose());
    let b = w.conjugate_diagonal(lambda);
    Ok(AbaDecomposition { a, b })
}

pub fn aba_decompose(u: &ComplexMatrix) -> Result<AbaDecomposition> {
    aba_decompose_with(u, PhaseBranch::Principal)
}

pub fn aba_decompose_with(u: &ComplexMatrix, branch: PhaseBranch) -> Result<AbaDecomposition> {
    u.check_unitary(UNITARY_TOL)?;
    let (v, lambda) = unitary_diagonalize(u)?;
    let lambda: Vec<f64> = match branch {
        PhaseBranch::Principal => lambda.values().to_vec(),
        PhaseBranch::NonPositive => lambda.values().iter().map(|&l| if l > 0.0 { l - 2.0 * PI } else { l }).collect(),
    };
    aba_from_spectral(&v, &lambda, branch)
}

/// Real symmetric `G` with `exp(-iG) = U` for a symmetric unitary `U`.
pub fn symmetric_generator(u: &ComplexMatrix) -> Result<RealSymmetricMatrix> {
    u.check_unitary(UNITARY_TOL)?;
    let re = RealSymmetricMatrix::symmetrize(&u.re());
    let im = RealSymmetricMatrix::symmetrize(&u.im());
    let (o, re_vals, im_vals) = simultaneous_diag_real(&re, &im)?;
    let angles: Vec<f64> =
        (0..u.rows()).map(|k| principal_angle(-Complex64::new(re_vals[k], im_vals[k]).arg())).collect();
    Ok(o.conjugate_diagonal(&angles))
}

/// Three pulses in execution order: `exp(iA)`, then `exp(-iB)`, then `exp(-iA)`.
pub fn aba_steps(aba: &AbaDecomposition) -> [PulseStep; 3] {
    [
        compile_symmetric_generator(&-&aba.a, "-A"),
        compile_symmetric_generator(&aba.b, "B"),
        compile_symmetric_generator(&aba.a, "A"),
    ]
}

/// Compiles a unitary: one pulse when `U = U^T`, otherwise the three ABA pulses.
pub fn compile_unitary(u: &ComplexMatrix, device: &DeviceParams) -> Result<PulseSchedule> {
    u.check_unitary(UNITARY_TOL)?;
    if u.symmetry_residual() <= SYMMETRY_DETECT_TOL {
        let g = symmetric_generator(u)?;
        let step = compile_symmetric_generator(&g, "G");
        return PulseSchedule::from_steps(u.rows(), device.clone(), "compile_unitary:symmetric", vec![step]);
    }
    compile_unitary_aba(u, device)
}

/// Always emits the three ABA pulses, even for symmetric input.
pub fn compile_unitary_aba(u: &ComplexMatrix, device: &DeviceParams) -> Result<PulseSchedule> {
    compile_unitary_aba_with(u, device, PhaseBranch::Principal)
}

pub fn compile_unitary_aba_with(
    u: &ComplexMatrix,
    device: &DeviceParams,
    branch: PhaseBranch,
) -> Result<PulseSchedule> {
    let aba = aba_decompose_with(u, branch)?;
    PulseSchedule::from_steps(u.rows(), device.clone(), "compile_unitary:aba", aba_steps(&aba).into())
}

/// Compiles `exp(-iHt)` (with `hbar = 1`) straight from the spectrum of `H`.
///
/// Real `H` needs one pulse; complex `H` uses `Lambda = t spec(H)` without
/// taking a matrix logarithm.
pub fn compile_hamiltonian(h: &ComplexMatrix, t: f64, device: &DeviceParams) -> Result<PulseSchedule> {
    h.check_hermitian(HERMITIAN_TOL)?;
    if !t.is_finite() {
        return Err(SesError::InvalidPulse(format!("evolution time must be finite, got {t}")));
    }
    let n = h.rows();
    if h.max_imag() <= 1e-12 * h.max_abs().max(1.0) {
        let g = RealSymmetricMatrix::symmetrize(&h.re()).scale(t);
        let step = compile_symmetric_generator(&g, "tH");
        return PulseSchedule::from_steps(n, device.clone(), "compile_hamiltonian:real", vec![step]);
    }
    let half = Complex64::new(0.5, 0.0);
    let herm = ComplexMatrix::from_fn(n, n, |i, j| half * (h[(i, j)] + h[(j, i)].conj()));
    let (v, spectrum) = hermitian_eig(&herm)?;
    let lambda: Vec<f64> = spectrum.values().iter().map(|e| t * e).collect();
    let aba = aba_from_spectral(&v, &lambda, PhaseBranch::Principal)?;
    PulseSchedule::from_steps(n, device.clone(), "compile_hamiltonian:aba", aba_steps(&aba).into())
}

/// `O1^T M O1` for a real orthogonal `O1` and complex `M`.
pub fn orthogonal_congruence(o: &RealMatrix, m: &ComplexMatrix) -> ComplexMatrix {
    let oc = ComplexMatrix::from_real(o);
    &(&oc.transpose() * m) * &oc
}

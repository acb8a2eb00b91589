// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! Random fixtures: Haar-like unitaries, states, observables and density matrices.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, RealMatrix, RealSymmetricMatrix};
use crate::state::{DensityMatrixState, SesState};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Gram-Schmidt orthonormalized complex Gaussian matrix.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
        // Two passes of modified Gram-Schmidt keep the columns orthogonal to machine precision.
        for _ in 0..2 {
            for c in &cols {
                let proj: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= proj * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Random real orthogonal matrix (real Gaussian, orthonormalized).
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RealMatrix {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        for _ in 0..2 {
            for c in &cols {
                let proj: f64 = c.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= proj * y;
                }
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|x| x / norm).collect());
    }
    RealMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Symmetric matrix with standard normal entries.
pub fn random_symmetric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RealSymmetricMatrix {
    let vals: Vec<f64> = (0..n * n).map(|_| rng.sample(StandardNormal)).collect();
    RealSymmetricMatrix::from_upper(n, |i, j| vals[i * n + j])
}

/// Hermitian matrix with complex normal entries.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let h = &g + &g.adjoint();
    h.scale(Complex64::new(0.5, 0.0))
}

/// Uniformly random pure state (normalized complex Gaussian).
pub fn random_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SesState {
    loop {
        let v: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
        if let Ok(s) = SesState::normalized(v) {
            return s;
        }
    }
}

/// Random full-rank mixed state `G G^dag / Tr(G G^dag)`.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrixState {
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    let n2 = m.rows();
    let scaled = m.scale(Complex64::new(1.0 / tr, 0.0));
    // Exact hermiticity for the validator.
    let herm = ComplexMatrix::from_fn(n2, n2, |i, j| 0.5 * (scaled[(i, j)] + scaled[(j, i)].conj()));
    DensityMatrixState::new(herm).expect("G G^dag is a valid density matrix")
}

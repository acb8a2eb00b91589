// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! Expectation values `Tr(rho O)` read out through occupation probabilities.
//!
//! With `O = V D V^dag`, running `V^dag` on the chip and reading the
//! occupation probabilities `p_i` gives `<O> = sum_i D_ii p_i`.

use num_complex::Complex64;

use crate::decompose::compile_unitary;
use crate::error::{Result, SesError};
use crate::linalg::{hermitian_eig, ComplexMatrix, RealDiagonal};
use crate::pulse::DeviceParams;
use crate::sim::{measure, run_schedule};
use crate::state::{DensityMatrixState, QuantumState};

/// Hermiticity tolerance on observables.
pub const OBSERVABLE_HERMITIAN_TOL: f64 = 1e-8;

/// A Hermitian observable with its spectral factors `O = V diag(D) V^dag`.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    pub matrix: ComplexMatrix,
    pub eigvecs: ComplexMatrix,
    /// Ascending.
    pub eigvals: RealDiagonal,
}

impl Observable {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

pub fn spectral_decompose(o: &ComplexMatrix) -> Result<Observable> {
    o.check_hermitian(OBSERVABLE_HERMITIAN_TOL)?;
    let n = o.rows();
    let half = Complex64::new(0.5, 0.0);
    let matrix = ComplexMatrix::from_fn(n, n, |i, j| half * (o[(i, j)] + o[(j, i)].conj()));
    let (eigvecs, eigvals) = hermitian_eig(&matrix)?;
    Ok(Observable { matrix, eigvecs, eigvals })
}

/// `Tr(rho O)`.
pub fn expectation_exact(rho: &DensityMatrixState, o: &Observable) -> Result<f64> {
    if rho.dim() != o.dim() {
        return Err(SesError::DimensionMismatch { expected: o.dim(), actual: rho.dim() });
    }
    let r = rho.matrix();
    let n = rho.dim();
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            tr += r[(i, j)] * o.matrix[(j, i)];
        }
    }
    Ok(tr.re)
}

/// How the occupation probabilities are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Readout {
    /// Read `p_i` straight off the simulated state.
    Exact,
    /// `shots` seeded readouts.
    Sampled { shots: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpectationEstimate {
    pub value: f64,
    /// `sum |D_ii| / (2 sqrt(N))`; zero for exact readout.
    pub std_error_bound: f64,
    pub shots: Option<u64>,
    /// Occupation probabilities after `V^dag` (estimated when sampled).
    pub probabilities: Vec<f64>,
    /// Number of pulses used for `V^dag`.
    pub pulses: usize,
}

/// Runs the readout protocol on `state`.
pub fn expectation_protocol(
    state: &QuantumState,
    o: &Observable,
    device: &DeviceParams,
    readout: Readout,
) -> Result<ExpectationEstimate> {
    if state.dim() != o.dim() {
        return Err(SesError::DimensionMismatch { expected: o.dim(), actual: state.dim() });
    }
    let schedule = compile_unitary(&o.eigvecs.adjoint(), device)?;
    let rotated = run_schedule(state, &schedule)?;
    let d = o.eigvals.values();
    match readout {
        Readout::Exact => {
            let p = rotated.populations();
            let value = d.iter().zip(&p).map(|(d, p)| d * p).sum();
            Ok(ExpectationEstimate {
                value,
                std_error_bound: 0.0,
                shots: None,
                probabilities: p,
                pulses: schedule.len(),
            })
        }
        Readout::Sampled { shots, seed } => {
            let record = measure(&rotated, shots, seed)?;
            // One division keeps sum(counts)/N == 1 exact.
            let weighted: f64 = d.iter().zip(&record.counts).map(|(d, &c)| d * c as f64).sum();
            let value = weighted / shots as f64;
            let spread: f64 = d.iter().map(|x| x.abs()).sum();
            Ok(ExpectationEstimate {
                value,
                std_error_bound: spread / (2.0 * (shots as f64).sqrt()),
                shots: Some(shots),
                probabilities: record.frequencies(),
                pulses: schedule.len(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_density, random_hermitian, random_state};
    use crate::state::SesState;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spectral_examples() {
        let obs = spectral_decompose(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(obs.eigvals.values(), &[1.0; 4]);

        let d = ComplexMatrix::from_diagonal(&[Complex64::new(-1.0, 0.0), Complex64::new(2.0, 0.0)]);
        let obs = spectral_decompose(&d).unwrap();
        assert_eq!(obs.eigvecs, ComplexMatrix::identity(2));
        assert_eq!(obs.eigvals.values(), &[-1.0, 2.0]);
    }

    #[test]
    fn spectral_random_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let h = random_hermitian(6, &mut rng);
        let obs = spectral_decompose(&h).unwrap();
        let d = ComplexMatrix::from_real(&obs.eigvals.to_matrix());
        let rec = &(&obs.eigvecs * &d) * &obs.eigvecs.adjoint();
        assert!(rec.max_abs_diff(&h) <= 1e-9);
        assert!(obs.eigvals.values().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(spectral_decompose(&m), Err(SesError::NotHermitian { .. })));
    }

    #[test]
    fn exact_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let rho = random_density(5, &mut rng);
        let id = spectral_decompose(&ComplexMatrix::identity(5)).unwrap();
        assert!((expectation_exact(&rho, &id).unwrap() - 1.0).abs() < 1e-12);

        let diag = ComplexMatrix::from_diagonal(&[3.0, -1.0, 0.5].map(|x| Complex64::new(x, 0.0)));
        let obs = spectral_decompose(&diag).unwrap();
        let e1 = DensityMatrixState::from_pure(&SesState::basis(3, 0));
        assert_eq!(expectation_exact(&e1, &obs).unwrap(), 3.0);
    }

    #[test]
    fn protocol_exact_matches_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let dev = DeviceParams::default();
        for n in [2, 4, 7] {
            let obs = spectral_decompose(&random_hermitian(n, &mut rng)).unwrap();
            let rho = random_density(n, &mut rng);
            let est = expectation_protocol(&rho.clone().into(), &obs, &dev, Readout::Exact).unwrap();
            assert!((est.value - expectation_exact(&rho, &obs).unwrap()).abs() <= 1e-8);

            let psi = random_state(n, &mut rng);
            let est = expectation_protocol(&psi.clone().into(), &obs, &dev, Readout::Exact).unwrap();
            let exact = expectation_exact(&DensityMatrixState::from_pure(&psi), &obs).unwrap();
            assert!((est.value - exact).abs() <= 1e-8);
        }
    }

    #[test]
    fn identity_observable_sampled_is_exactly_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        let obs = spectral_decompose(&ComplexMatrix::identity(4)).unwrap();
        let state: QuantumState = random_state(4, &mut rng).into();
        for shots in [1, 7, 1000] {
            let est = expectation_protocol(&state, &obs, &DeviceParams::default(), Readout::Sampled { shots, seed: 5 })
                .unwrap();
            assert_eq!(est.value, 1.0);
            assert!(est.probabilities.iter().all(|p| (0.0..=1.0).contains(p)));
        }
    }

    #[test]
    fn sampled_within_five_sigma() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let obs = spectral_decompose(&random_hermitian(5, &mut rng)).unwrap();
        let rho = random_density(5, &mut rng);
        let exact = expectation_exact(&rho, &obs).unwrap();
        let est = expectation_protocol(
            &rho.into(),
            &obs,
            &DeviceParams::default(),
            Readout::Sampled { shots: 1_000_000, seed: 9 },
        )
        .unwrap();
        assert!((est.value - exact).abs() <= 5.0 * est.std_error_bound);
    }
}

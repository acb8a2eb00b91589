// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact execution of pulse schedules and readout sampling.
//!
//! Every pulse is applied as its exact exponential; there is no time stepping
//! and no noise. Schedules run in list order, `steps[0]` first, so the net
//! operator of `[s0, s1, s2]` is `U(s2) U(s1) U(s0)`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Result, SesError};
use crate::linalg::ComplexMatrix;
use crate::pulse::{PulseSchedule, PulseStep};
use crate::state::{DensityMatrixState, QuantumState, SesState};

/// Name of the generator behind [`measure`], recorded with every sample.
pub const RNG_ALGORITHM: &str = "ChaCha20Rng/seed_from_u64";

/// States that can be pushed through a unitary.
pub trait Evolve: Sized {
    fn dim(&self) -> usize;

    /// Applies a unitary that has already been built for a step.
    fn apply_unitary(&self, u: &ComplexMatrix) -> Self;

    /// Occupation probabilities, the only thing readout sees.
    fn populations(&self) -> Vec<f64>;
}

impl Evolve for SesState {
    fn dim(&self) -> usize {
        SesState::dim(self)
    }

    fn apply_unitary(&self, u: &ComplexMatrix) -> Self {
        SesState::from_raw(u.mul_vec(self.amplitudes()))
    }

    fn populations(&self) -> Vec<f64> {
        self.weights()
    }
}

impl Evolve for DensityMatrixState {
    fn dim(&self) -> usize {
        DensityMatrixState::dim(self)
    }

    fn apply_unitary(&self, u: &ComplexMatrix) -> Self {
        let m = &(u * self.matrix()) * &u.adjoint();
        let n = m.rows();
        let half = Complex64::new(0.5, 0.0);
        DensityMatrixState::from_raw(ComplexMatrix::from_fn(n, n, |i, j| half * (m[(i, j)] + m[(j, i)].conj())))
    }

    fn populations(&self) -> Vec<f64> {
        DensityMatrixState::populations(self)
    }
}

impl Evolve for QuantumState {
    fn dim(&self) -> usize {
        QuantumState::dim(self)
    }

    fn apply_unitary(&self, u: &ComplexMatrix) -> Self {
        match self {
            Self::Pure(s) => Self::Pure(s.apply_unitary(u)),
            Self::Mixed(r) => Self::Mixed(r.apply_unitary(u)),
        }
    }

    fn populations(&self) -> Vec<f64> {
        QuantumState::populations(self)
    }
}

fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(SesError::DimensionMismatch { expected, actual })
    }
}

pub fn evolve_pure(state: &SesState, step: &PulseStep) -> Result<SesState> {
    evolve(state, step)
}

pub fn evolve_density(rho: &DensityMatrixState, step: &PulseStep) -> Result<DensityMatrixState> {
    evolve(rho, step)
}

/// Applies one pulse to any [`Evolve`] state.
pub fn evolve<S: Evolve>(state: &S, step: &PulseStep) -> Result<S> {
    check_dim(state.dim(), step.dim())?;
    Ok(state.apply_unitary(&step.unitary()?))
}

/// Runs the schedule from `steps[0]` to the last step.
pub fn run_schedule<S: Evolve + Clone>(state: &S, schedule: &PulseSchedule) -> Result<S> {
    check_dim(state.dim(), schedule.dim())?;
    schedule.steps().iter().try_fold(state.clone(), |s, step| evolve(&s, step))
}

/// Net operator of a schedule, `U(last) ... U(first)`.
pub fn schedule_unitary(schedule: &PulseSchedule) -> Result<ComplexMatrix> {
    steps_unitary(schedule.dim(), schedule.steps())
}

/// Net operator of pulses in execution order.
pub fn steps_unitary(n: usize, steps: &[PulseStep]) -> Result<ComplexMatrix> {
    let mut total = ComplexMatrix::identity(n);
    for step in steps {
        check_dim(n, step.dim())?;
        if step.theta() == 0.0 {
            continue;
        }
        total = &step.unitary()? * &total;
    }
    Ok(total)
}

/// Counts from `shots` independent readouts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub shots: u64,
    /// `counts[i]` is the number of shots that found the excitation on qubit `i`.
    pub counts: Vec<u64>,
    pub seed: u64,
    pub rng: String,
}

impl MeasurementRecord {
    /// Estimated occupation probabilities `counts[i] / shots`.
    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.shots as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }
}

/// Samples `shots` readouts. Each shot finds the excitation on exactly one qubit.
pub fn measure<S: Evolve>(state: &S, shots: u64, seed: u64) -> Result<MeasurementRecord> {
    if shots == 0 {
        return Err(SesError::InvalidPulse("at least one shot is required".into()));
    }
    let probs = state.populations();
    let counts = sample_counts(&probs, shots, seed)?;
    Ok(MeasurementRecord { shots, counts, seed, rng: RNG_ALGORITHM.into() })
}

/// Multinomial draw via conditional binomials, in index order.
fn sample_counts(probs: &[f64], shots: u64, seed: u64) -> Result<Vec<u64>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let clean: Vec<f64> = probs.iter().map(|p| p.max(0.0)).collect();
    let total: f64 = clean.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(SesError::InvalidMatrix("populations do not form a distribution".into()));
    }
    let mut counts = vec![0u64; clean.len()];
    let mut remaining = shots;
    let mut mass = 1.0;
    for (i, p) in clean.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if i + 1 == clean.len() {
            counts[i] = remaining;
            break;
        }
        let p = p / total;
        let conditional = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 1.0 };
        let k = Binomial::new(remaining, conditional)
            .map_err(|e| SesError::InvalidMatrix(format!("binomial sampler: {e}")))?
            .sample(&mut rng);
        counts[i] = k;
        remaining -= k;
        mass -= p;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RealSymmetricMatrix;
    use crate::pulse::DeviceParams;
    use crate::random::{random_state, random_symmetric};
    use rand_chacha::ChaCha8Rng;

    fn star_step(n: usize) -> PulseStep {
        let k = RealSymmetricMatrix::from_upper(n, |i, j| match (i, j) {
            (0, 0) => 1.0,
            (0, _) => 0.5,
            _ => 0.0,
        });
        PulseStep::new(k, std::f64::consts::PI / (n as f64).sqrt(), "star").unwrap()
    }

    #[test]
    fn zero_angle_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let s = random_state(4, &mut rng);
        let step = PulseStep::new(random_symmetric(4, &mut rng).scale(0.1), 0.0, "idle").unwrap();
        assert_eq!(evolve_pure(&s, &step).unwrap(), s);
        let rho = DensityMatrixState::from_pure(&s);
        assert_eq!(evolve_density(&rho, &step).unwrap().matrix().max_abs_diff(rho.matrix()), 0.0);
    }

    #[test]
    fn star_pulse_spreads_the_excitation() {
        let out = evolve_pure(&SesState::basis(5, 0), &star_step(5)).unwrap();
        for z in out.amplitudes() {
            assert!((z.norm() - 1.0 / 5f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_iswap_moves_weight() {
        // Phase-aligned pair (a, i b) under exp(-i phi X): weight a^2 -> (a cos phi + b sin phi)^2.
        let (a, b) = (0.3f64.sqrt(), 0.7f64.sqrt());
        let phi = 0.4;
        let s = SesState::new(vec![Complex64::new(a, 0.0), Complex64::new(0.0, b)]).unwrap();
        let x = RealSymmetricMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let out = evolve_pure(&s, &PulseStep::new(x, phi, "swap").unwrap()).unwrap();
        let w = out.weights();
        assert!((w[0] - (a * phi.cos() + b * phi.sin()).powi(2)).abs() < 1e-14);
        assert!((w[0] + w[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn maximally_mixed_is_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let rho = DensityMatrixState::maximally_mixed(4);
        let step = PulseStep::new(random_symmetric(4, &mut rng).scale(0.2), 1.3, "k").unwrap();
        let out = evolve_density(&rho, &step).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn density_matches_pure_evolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in [2, 5, 8] {
            let s = random_state(n, &mut rng);
            let k = random_symmetric(n, &mut rng);
            let k = k.scale(1.0 / k.max_abs());
            let step = PulseStep::new(k, 2.1, "k").unwrap();
            let pure = evolve_pure(&s, &step).unwrap();
            let mixed = evolve_density(&DensityMatrixState::from_pure(&s), &step).unwrap();
            assert!(mixed.matrix().max_abs_diff(DensityMatrixState::from_pure(&pure).matrix()) <= 1e-10);
            assert!((mixed.matrix().trace().re - 1.0).abs() <= 1e-10);
            assert!(mixed.matrix().hermiticity_residual() <= 1e-10);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let err = evolve_pure(&SesState::basis(3, 0), &star_step(4)).unwrap_err();
        assert_eq!(err, SesError::DimensionMismatch { expected: 3, actual: 4 });
    }

    #[test]
    fn empty_schedule_is_identity() {
        let sched = PulseSchedule::new(3, DeviceParams::default(), "empty");
        assert_eq!(schedule_unitary(&sched).unwrap(), ComplexMatrix::identity(3));
        let s = SesState::basis(3, 2);
        assert_eq!(run_schedule(&s, &sched).unwrap(), s);
    }

    #[test]
    fn schedule_unitary_matches_basis_runs() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let n = 4;
        let steps: Vec<PulseStep> = (0..3)
            .map(|i| {
                let k = random_symmetric(n, &mut rng);
                PulseStep::new(k.scale(1.0 / k.max_abs()), 0.5 + i as f64, format!("s{i}")).unwrap()
            })
            .collect();
        let sched = PulseSchedule::from_steps(n, DeviceParams::default(), "test", steps).unwrap();
        let u = schedule_unitary(&sched).unwrap();
        for j in 0..n {
            let out = run_schedule(&SesState::basis(n, j), &sched).unwrap();
            for i in 0..n {
                assert!((out.amplitudes()[i] - u[(i, j)]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn long_schedules_preserve_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let n = 6;
        let mut sched = PulseSchedule::new(n, DeviceParams::default(), "long");
        for i in 0..100 {
            let k = random_symmetric(n, &mut rng);
            sched.push(PulseStep::new(k.scale(1.0 / k.max_abs()), 0.1 * i as f64, "k").unwrap()).unwrap();
        }
        let out = run_schedule(&random_state(n, &mut rng), &sched).unwrap();
        assert!((out.norm_sqr() - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn basis_state_counts() {
        let rec = measure(&SesState::basis(4, 1), 1000, 7).unwrap();
        assert_eq!(rec.counts, vec![0, 1000, 0, 0]);
        assert_eq!(rec.rng, RNG_ALGORITHM);
    }

    #[test]
    fn seeded_measurement_is_reproducible() {
        let s = SesState::uniform(6);
        let a = measure(&s, 10_000, 99).unwrap();
        let b = measure(&s, 10_000, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.counts.iter().sum::<u64>(), 10_000);
        assert_ne!(a.counts, measure(&s, 10_000, 100).unwrap().counts);
    }

    #[test]
    fn uniform_sampling_within_bound() {
        let n = 5;
        let shots = 1_000_000;
        let rec = measure(&SesState::uniform(n), shots, 3).unwrap();
        let bound = 5.0 / (2.0 * (shots as f64).sqrt());
        for f in rec.frequencies() {
            assert!((f - 1.0 / n as f64).abs() <= bound);
        }
    }

    #[test]
    fn zero_shots_rejected() {
        assert!(measure(&SesState::uniform(2), 0, 1).is_err());
    }
}

// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! State preparation from `|1)`.
//!
//! The plan is built backwards: starting from the target, each reduction
//! step phase-aligns the lightest and heaviest components and then moves
//! weight between them with a partial iSWAP until the lightest one sits at
//! exactly `1/n`. Once every weight is `1/n` a diagonal pulse strips the
//! remaining phases, leaving the uniform state. Running the inverse pulses in
//! reverse after a star-graph pulse (which turns `|1)` into the uniform state)
//! prepares the target. The product of that whole sequence is the compiled
//! preparation unitary, which can also be run as three ABA pulses.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::decompose::{compile_unitary_aba_with, PhaseBranch};
use crate::error::{Result, SesError};
use crate::linalg::{ComplexMatrix, RealSymmetricMatrix};
use crate::pulse::{DeviceParams, PulseSchedule, PulseStep};
use crate::sim::steps_unitary;
use crate::state::{unit_phase, SesState};

/// Absolute tolerance on `| |a_i|^2 - 1/n |` for a uniform-weight state.
pub const UNIFORM_WEIGHT_TOL: f64 = 1e-10;

/// Allowed residual of the partial-iSWAP angle equation.
pub const SWAP_ANGLE_RESIDUAL_TOL: f64 = 1e-12;

/// The star-graph coupling matrix centered on qubit 1.
pub fn star_matrix(n: usize) -> RealSymmetricMatrix {
    RealSymmetricMatrix::from_upper(n, |i, j| match (i, j) {
        (0, 0) => 1.0,
        (0, _) => 0.5,
        _ => 0.0,
    })
}

/// The pulse taking `|1)` to the uniform state (up to a global phase):
/// star couplings held for `theta = pi / sqrt(n)`.
pub fn star_uniform_step(n: usize) -> Result<PulseStep> {
    if n < 2 {
        return Err(SesError::InvalidPulse(format!("star pulse needs n >= 2, got {n}")));
    }
    PulseStep::new(star_matrix(n), PI / (n as f64).sqrt(), "star")
}

/// Phase pulse turning the uniform state into a uniform-weight `target`:
/// `K = -diag(theta_i / 2 pi)` for `theta = 2 pi`.
pub fn uniform_weight_phases_step(target: &SesState) -> Result<PulseStep> {
    let n = target.dim() as f64;
    let deviation = target.weights().iter().map(|w| (w - 1.0 / n).abs()).fold(0.0, f64::max);
    if deviation > UNIFORM_WEIGHT_TOL {
        return Err(SesError::NonUniformWeights { deviation });
    }
    let diag: Vec<f64> = target.phases().iter().map(|t| -t / (2.0 * PI)).collect();
    PulseStep::new(RealSymmetricMatrix::from_diagonal(&diag), 2.0 * PI, "phases")
}

/// One weight-moving iteration of the reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionStep {
    pub i_min: usize,
    pub i_max: usize,
    /// Phase pulse making `a_min` real and `a_max` positive imaginary.
    pub u_diag: PulseStep,
    /// Partial iSWAP between `i_min` and `i_max`.
    pub u_swap: PulseStep,
    /// Swap angle, also `u_swap.theta()`.
    pub phi: f64,
    /// State after both pulses.
    pub next: SesState,
    /// Bookkeeping weights after both pulses; `weights[i_min]` is exactly `1/n`.
    pub weights: Vec<f64>,
}

/// Performs one reduction iteration on `state`.
pub fn reduction_step(state: &SesState) -> Result<ReductionStep> {
    reduce_once(state, &state.weights())
}

fn is_uniform(weights: &[f64]) -> bool {
    let target = 1.0 / weights.len() as f64;
    weights.iter().all(|w| (w - target).abs() <= UNIFORM_WEIGHT_TOL)
}

fn reduce_once(state: &SesState, weights: &[f64]) -> Result<ReductionStep> {
    let n = state.dim();
    if is_uniform(weights) {
        return Err(SesError::AlreadyUniform);
    }
    // Lowest index wins ties.
    let mut i_min = 0;
    let mut i_max = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w < weights[i_min] {
            i_min = i;
        }
        if w > weights[i_max] {
            i_max = i;
        }
    }
    let (w_min, w_max) = (weights[i_min], weights[i_max]);
    if w_min >= w_max {
        return Err(SesError::AlreadyUniform);
    }
    let amps = state.amplitudes();
    let (th_min, th_max) = (unit_phase(amps[i_min]), unit_phase(amps[i_max]));

    let mut diag = vec![0.0; n];
    diag[i_min] = th_min / (3.0 * PI);
    diag[i_max] = th_max / (3.0 * PI) - 1.0 / 6.0;
    if diag.iter().any(|k| !(-1.0 / 6.0..=2.0 / 3.0).contains(k)) {
        return Err(SesError::InvalidPulse(format!("phase-alignment entries {diag:?} left [-1/6, 2/3]")));
    }
    let u_diag = PulseStep::new(RealSymmetricMatrix::from_diagonal(&diag), 3.0 * PI, "diag")?;

    let uniform_amp = 1.0 / (n as f64).sqrt();
    let (a, b) = (w_min.sqrt(), w_max.sqrt());
    let radius = (w_min + w_max).sqrt();
    let phi = b.atan2(a) - (uniform_amp / radius).min(1.0).acos();
    let residual = (a * phi.cos() + b * phi.sin() - uniform_amp).abs();
    if residual > SWAP_ANGLE_RESIDUAL_TOL || !(phi > 0.0 && phi < PI / 2.0) {
        return Err(SesError::InvalidPulse(format!("swap angle {phi} has residual {residual:e}")));
    }
    let swap_k =
        RealSymmetricMatrix::from_upper(
            n,
            |i, j| {
                if (i, j) == (i_min.min(i_max), i_min.max(i_max)) {
                    1.0
                } else {
                    0.0
                }
            },
        );
    let u_swap = PulseStep::new(swap_k, phi, "swap")?;

    let mut next_weights = weights.to_vec();
    next_weights[i_min] = 1.0 / n as f64;
    next_weights[i_max] = (w_min + w_max - 1.0 / n as f64).max(0.0);
    let mut next = amps.to_vec();
    next[i_min] = Complex64::new(uniform_amp, 0.0);
    next[i_max] = Complex64::new(0.0, next_weights[i_max].sqrt());

    Ok(ReductionStep { i_min, i_max, u_diag, u_swap, phi, next: SesState::from_raw(next), weights: next_weights })
}

/// The full backward reduction of a target to the uniform state.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub steps: Vec<ReductionStep>,
    /// Phase pulse `K = diag(alpha_i / 2 pi)`, `theta = 2 pi`, taking the
    /// uniform-weight state left by `steps` to the uniform state.
    pub w_diag: PulseStep,
}

impl Reduction {
    pub fn m(&self) -> usize {
        self.steps.len()
    }

    /// Pulses in execution order, target to uniform state.
    pub fn forward_pulses(&self) -> Vec<PulseStep> {
        let mut out = Vec::with_capacity(2 * self.steps.len() + 1);
        for s in &self.steps {
            out.push(s.u_diag.clone());
            out.push(s.u_swap.clone());
        }
        out.push(self.w_diag.clone());
        out
    }
}

/// Iterates [`reduction_step`] until the weights are uniform, then strips the phases.
pub fn reduce_to_uniform(target: &SesState) -> Result<Reduction> {
    let n = target.dim();
    let limit = n.saturating_sub(1);
    let mut state = target.clone();
    let mut weights = target.weights();
    let mut steps = Vec::new();
    while !is_uniform(&weights) {
        if steps.len() >= limit {
            return Err(SesError::IterationOverflow { limit });
        }
        let step = reduce_once(&state, &weights)?;
        state = step.next.clone();
        weights = step.weights.clone();
        steps.push(step);
    }
    let alphas = state.phases();
    let w_diag = if alphas.iter().all(|&a| a == 0.0) {
        PulseStep::idle(n, "w_diag")
    } else {
        let diag: Vec<f64> = alphas.iter().map(|a| a / (2.0 * PI)).collect();
        PulseStep::new(RealSymmetricMatrix::from_diagonal(&diag), 2.0 * PI, "w_diag")?
    };
    Ok(Reduction { steps, w_diag })
}

/// Everything needed to prepare a target from `|1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrepPlan {
    pub n: usize,
    pub star_step: PulseStep,
    pub reduction: Reduction,
    /// The single unitary equal to the whole linear-depth sequence.
    pub compiled_u: ComplexMatrix,
}

impl PrepPlan {
    /// Number of reduction iterations.
    pub fn m(&self) -> usize {
        self.reduction.m()
    }

    /// The linear-depth sequence in execution order: star pulse, the inverse
    /// phase pulse, then the inverted reduction pairs from last to first.
    pub fn linear_steps(&self) -> Vec<PulseStep> {
        let mut out = Vec::with_capacity(2 * self.m() + 2);
        out.push(self.star_step.clone());
        out.push(self.reduction.w_diag.dagger());
        for s in self.reduction.steps.iter().rev() {
            out.push(s.u_swap.dagger());
            out.push(s.u_diag.dagger());
        }
        out
    }
}

pub fn plan_preparation(target: &SesState) -> Result<PrepPlan> {
    let n = target.dim();
    let star_step = star_uniform_step(n)?;
    let reduction = reduce_to_uniform(target)?;
    let mut plan = PrepPlan { n, star_step, reduction, compiled_u: ComplexMatrix::identity(n) };
    plan.compiled_u = steps_unitary(n, &plan.linear_steps())?;
    Ok(plan)
}

/// The compiled preparation unitary; its first column is the target up to phase.
pub fn compiled_prep_unitary(target: &SesState) -> Result<ComplexMatrix> {
    Ok(plan_preparation(target)?.compiled_u)
}

/// Which preparation protocol to emit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrepMode {
    /// `2M + 2` pulses.
    Linear,
    /// Three ABA pulses implementing the compiled unitary.
    ThreeStep,
}

/// Schedule preparing `target` from `|1)`, plus the plan behind it.
pub fn prepare_state_schedule(
    target: &SesState,
    device: &DeviceParams,
    mode: PrepMode,
) -> Result<(PulseSchedule, PrepPlan)> {
    prepare_state_schedule_with(target, device, mode, PhaseBranch::Principal)
}

/// As [`prepare_state_schedule`], choosing the phase branch of the three-step generators.
pub fn prepare_state_schedule_with(
    target: &SesState,
    device: &DeviceParams,
    mode: PrepMode,
    branch: PhaseBranch,
) -> Result<(PulseSchedule, PrepPlan)> {
    let plan = plan_preparation(target)?;
    let schedule = match mode {
        PrepMode::Linear => PulseSchedule::from_steps(plan.n, device.clone(), "prepare:linear", plan.linear_steps())?,
        PrepMode::ThreeStep => {
            let mut s = compile_unitary_aba_with(&plan.compiled_u, device, branch)?;
            s.metadata.source = "prepare:three-step".into();
            s
        }
    };
    Ok((schedule, plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_state;
    use crate::sim::{evolve_pure, run_schedule};
    use crate::testutil::reference_target;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_all_magnitudes(s: &SesState, m: f64, tol: f64) {
        for z in s.amplitudes() {
            assert!((z.norm() - m).abs() <= tol, "{z} vs {m}");
        }
    }

    #[test]
    fn star_step_makes_uniform_state() {
        for n in [2, 4, 16] {
            let out = evolve_pure(&SesState::basis(n, 0), &star_uniform_step(n).unwrap()).unwrap();
            assert_all_magnitudes(&out, 1.0 / (n as f64).sqrt(), 1e-9);
        }
        assert!(star_uniform_step(1).is_err());
    }

    #[test]
    fn phase_step_examples() {
        let step = uniform_weight_phases_step(&SesState::uniform(3)).unwrap();
        assert_eq!(step.k().max_abs(), 0.0);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let target = SesState::new(vec![Complex64::new(s, 0.0), Complex64::new(0.0, s)]).unwrap();
        let step = uniform_weight_phases_step(&target).unwrap();
        assert!((step.k()[(1, 1)] + 0.25).abs() < 1e-15 && step.k()[(0, 0)] == 0.0);
        let out = evolve_pure(&SesState::uniform(2), &step).unwrap();
        assert!(out.overlap(&target) >= 1.0 - 1e-9);

        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let amps: Vec<Complex64> = (0..5)
            .map(|_| {
                Complex64::from_polar(1.0 / 5f64.sqrt(), rand::Rng::random_range(&mut rng, 0.0..std::f64::consts::TAU))
            })
            .collect();
        let target = SesState::new(amps).unwrap();
        let out = evolve_pure(&SesState::uniform(5), &uniform_weight_phases_step(&target).unwrap()).unwrap();
        assert!(out.overlap(&target) >= 1.0 - 1e-9);

        assert!(matches!(uniform_weight_phases_step(&SesState::basis(2, 0)), Err(SesError::NonUniformWeights { .. })));
    }

    #[test]
    fn two_level_reduction() {
        let s = SesState::new(vec![Complex64::new(0.9f64.sqrt(), 0.0), Complex64::new(0.1f64.sqrt(), 0.0)]).unwrap();
        let step = reduction_step(&s).unwrap();
        assert_eq!((step.i_max, step.i_min), (0, 1));
        assert_eq!(step.weights[1], 0.5);
        assert!((step.weights[0] - 0.5).abs() < 1e-15);
        let simulated = evolve_pure(&evolve_pure(&s, &step.u_diag).unwrap(), &step.u_swap).unwrap();
        for w in simulated.weights() {
            assert!((w - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn printed_target_first_step() {
        let step = reduction_step(&reference_target()).unwrap();
        // Qubits 2 and 3 in one-based labels.
        assert_eq!((step.i_max, step.i_min), (1, 2));
        let w = reference_target().weights();
        assert!((w[1] - 0.3034).abs() < 1e-3 && (w[2] - 0.0700).abs() < 1e-3);
    }

    #[test]
    fn uniform_input_is_rejected() {
        assert_eq!(reduction_step(&SesState::uniform(4)).unwrap_err(), SesError::AlreadyUniform);
    }

    #[test]
    fn reduction_bookkeeping_matches_simulation() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for n in [3, 6, 11] {
            let target = random_state(n, &mut rng);
            let red = reduce_to_uniform(&target).unwrap();
            let mut sim = target.clone();
            for step in &red.steps {
                sim = evolve_pure(&evolve_pure(&sim, &step.u_diag).unwrap(), &step.u_swap).unwrap();
                assert_eq!(step.weights[step.i_min], 1.0 / n as f64);
                for (a, b) in sim.weights().iter().zip(&step.weights) {
                    assert!((a - b).abs() <= 1e-9);
                }
                assert!((step.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
            let end = evolve_pure(&sim, &red.w_diag).unwrap();
            assert!(end.overlap(&SesState::uniform(n)) >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn reduction_of_uniform_and_basis_targets() {
        let red = reduce_to_uniform(&SesState::uniform(4)).unwrap();
        assert_eq!(red.m(), 0);
        assert_eq!(red.w_diag.theta(), 0.0);

        let red = reduce_to_uniform(&SesState::basis(5, 2)).unwrap();
        assert_eq!(red.m(), 4);
    }

    #[test]
    fn printed_target_prepares_in_both_modes() {
        let target = reference_target();
        let dev = DeviceParams::default();
        for mode in [PrepMode::Linear, PrepMode::ThreeStep] {
            let (sched, plan) = prepare_state_schedule(&target, &dev, mode).unwrap();
            assert!(plan.m() <= 4);
            let out = run_schedule(&SesState::basis(5, 0), &sched).unwrap();
            assert!(out.overlap(&target) >= 1.0 - 1e-8, "{mode:?}");
            match mode {
                PrepMode::Linear => assert_eq!(sched.len(), 2 * plan.m() + 2),
                PrepMode::ThreeStep => assert_eq!(sched.len(), 3),
            }
        }
    }

    #[test]
    fn basis_target_round_trips() {
        let target = SesState::basis(4, 0);
        let (sched, _) = prepare_state_schedule(&target, &DeviceParams::default(), PrepMode::Linear).unwrap();
        let out = run_schedule(&SesState::basis(4, 0), &sched).unwrap();
        assert!(out.overlap(&target) >= 1.0 - 1e-8);
        let u = compiled_prep_unitary(&target).unwrap();
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn modes_agree_on_random_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let target = random_state(8, &mut rng);
        let dev = DeviceParams::default();
        let start = SesState::basis(8, 0);
        let (lin, _) = prepare_state_schedule(&target, &dev, PrepMode::Linear).unwrap();
        let (three, _) = prepare_state_schedule(&target, &dev, PrepMode::ThreeStep).unwrap();
        let a = run_schedule(&start, &lin).unwrap();
        let b = run_schedule(&start, &three).unwrap();
        assert!(a.overlap(&b) >= 1.0 - 1e-8);
    }

    #[test]
    fn compiled_unitary_first_column_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let target = random_state(6, &mut rng);
        let u = compiled_prep_unitary(&target).unwrap();
        assert!(u.unitarity_residual() <= 1e-9);
        let col = SesState::from_raw(u.column(0));
        assert!(col.overlap(&target) >= 1.0 - 1e-9);
    }
}

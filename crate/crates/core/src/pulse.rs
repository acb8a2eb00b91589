// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! Standard-form pulses.
//!
//! The chip executes `H = g_max K` with every entry of `K` in `[-1, 1]`. A pulse
//! held for time `t` applies `exp(-i theta K)` with `theta = g_max t / hbar`, so
//! the angle `theta` is the canonical pulse length and nanoseconds are derived
//! from [`DeviceParams`] only when reporting.

use std::f64::consts::PI;

use crate::error::{Result, SesError};
use crate::linalg::{expm_generator, ComplexMatrix, RealSymmetricMatrix};

/// Angles at or below this are emitted as empty pulses.
pub const ZERO_ANGLE_TOL: f64 = 1e-12;

/// Slack allowed on `|K_ij| <= 1` before a pulse is rejected.
const K_BOUND_SLACK: f64 = 1e-12;

/// Default coupling strength `g_max / 2 pi` in MHz.
pub const DEFAULT_GMAX_MHZ: f64 = 50.0;

/// Hardware parameters needed to turn angles into durations.
#[derive(Clone, Debug, PartialEq)]
pub struct DeviceParams {
    /// `g_max / 2 pi` in MHz.
    pub g_max_over_2pi_mhz: f64,
    pub name: String,
}

impl DeviceParams {
    pub fn new(g_max_over_2pi_mhz: f64, name: impl Into<String>) -> Result<Self> {
        if !(g_max_over_2pi_mhz.is_finite() && g_max_over_2pi_mhz > 0.0) {
            return Err(SesError::InvalidDevice(format!("g_max/2pi must be positive, got {g_max_over_2pi_mhz}")));
        }
        Ok(Self { g_max_over_2pi_mhz, name: name.into() })
    }

    /// Nanoseconds needed to accumulate `theta` radians at full coupling.
    pub fn duration_ns(&self, theta: f64) -> f64 {
        theta / (2.0 * PI * self.g_max_over_2pi_mhz * 1e-3)
    }
}

impl Default for DeviceParams {
    fn default() -> Self {
        Self { g_max_over_2pi_mhz: DEFAULT_GMAX_MHZ, name: "complete-graph".into() }
    }
}

/// One rectangular pulse `exp(-i theta K)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseStep {
    k: RealSymmetricMatrix,
    theta: f64,
    label: String,
}

impl PulseStep {
    /// Validates `theta >= 0` and `|K_ij| <= 1`.
    pub fn new(k: RealSymmetricMatrix, theta: f64, label: impl Into<String>) -> Result<Self> {
        if !theta.is_finite() || theta < 0.0 {
            return Err(SesError::InvalidPulse(format!("angle must be finite and non-negative, got {theta}")));
        }
        let max = k.max_abs();
        if max > 1.0 + K_BOUND_SLACK {
            return Err(SesError::InvalidPulse(format!("|K| entry {max} exceeds 1")));
        }
        let k = if max > 1.0 {
            let n = k.dim();
            RealSymmetricMatrix::from_upper(n, |i, j| k[(i, j)].clamp(-1.0, 1.0))
        } else {
            k
        };
        Ok(Self { k, theta, label: label.into() })
    }

    /// A zero-length pulse on `n` qubits.
    pub fn idle(n: usize, label: impl Into<String>) -> Self {
        Self { k: RealSymmetricMatrix::zeros(n), theta: 0.0, label: label.into() }
    }

    pub fn k(&self) -> &RealSymmetricMatrix {
        &self.k
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.k.dim()
    }

    /// True when the pulse runs at full coupling: some `|K_ij| == 1`.
    pub fn is_saturated(&self) -> bool {
        self.theta == 0.0 || (self.k.max_abs() - 1.0).abs() <= 1e-12
    }

    /// The unitary `exp(-i theta K)` this pulse applies.
    pub fn unitary(&self) -> Result<ComplexMatrix> {
        expm_generator(self.theta, &self.k)
    }

    /// The inverse pulse: same angle, `K -> -K`.
    pub fn dagger(&self) -> Self {
        Self { k: -&self.k, theta: self.theta, label: format!("{}^dag", self.label) }
    }
}

/// Schedule provenance. Pulses are always rectangular (abrupt on/off).
#[derive(Clone, Debug, PartialEq)]
pub struct ScheduleMetadata {
    pub source: String,
    pub seed: Option<u64>,
    pub pulse_shape: String,
}

impl ScheduleMetadata {
    pub fn new(source: impl Into<String>) -> Self {
        Self { source: source.into(), seed: None, pulse_shape: "rectangular".into() }
    }
}

/// An ordered pulse sequence. `steps[0]` is applied first.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseSchedule {
    n: usize,
    steps: Vec<PulseStep>,
    device: DeviceParams,
    pub metadata: ScheduleMetadata,
}

impl PulseSchedule {
    pub fn new(n: usize, device: DeviceParams, source: impl Into<String>) -> Self {
        Self { n, steps: Vec::new(), device, metadata: ScheduleMetadata::new(source) }
    }

    pub fn from_steps(
        n: usize,
        device: DeviceParams,
        source: impl Into<String>,
        steps: Vec<PulseStep>,
    ) -> Result<Self> {
        let mut s = Self::new(n, device, source);
        for step in steps {
            s.push(step)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, step: PulseStep) -> Result<()> {
        if step.dim() != self.n {
            return Err(SesError::DimensionMismatch { expected: self.n, actual: step.dim() });
        }
        self.steps.push(step);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[PulseStep] {
        &self.steps
    }

    pub fn device(&self) -> &DeviceParams {
        &self.device
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Sum of pulse angles.
    pub fn total_angle(&self) -> f64 {
        self.steps.iter().map(PulseStep::theta).sum()
    }

    pub fn duration_ns(&self) -> f64 {
        schedule_duration_ns(self)
    }
}

/// Midpoint of the diagonal's range, the shift minimizing [`rotation_angle`].
pub fn optimal_shift(a: &RealSymmetricMatrix) -> f64 {
    let diag = a.diagonal();
    let lo = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    0.5 * (lo + hi)
}

/// `max_ij |A_ij - c delta_ij|`.
pub fn rotation_angle(a: &RealSymmetricMatrix, c: f64) -> f64 {
    a.shifted(c).max_abs()
}

/// Time-optimal pulse for `exp(-iA)` up to the global phase `exp(-ic)`:
/// `K = (A - cI) / theta_A` with `c` from [`optimal_shift`].
pub fn compile_symmetric_generator(a: &RealSymmetricMatrix, label: impl Into<String>) -> PulseStep {
    let c = optimal_shift(a);
    let shifted = a.shifted(c);
    let theta = shifted.max_abs();
    if theta <= ZERO_ANGLE_TOL {
        return PulseStep::idle(a.dim(), label);
    }
    // |x| / max|x| never rounds above 1, so the bound holds exactly.
    let k = RealSymmetricMatrix::from_upper(a.dim(), |i, j| shifted[(i, j)] / theta);
    PulseStep { k, theta, label: label.into() }
}

/// Total duration in ns: `sum(theta) / (2 pi g_max/2pi)`.
pub fn schedule_duration_ns(s: &PulseSchedule) -> f64 {
    s.device.duration_ns(s.total_angle())
}

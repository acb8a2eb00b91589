// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON file formats for matrices, states and pulse schedules.
//!
//! Complex numbers are `[re, im]` pairs. Doubles are written with the shortest
//! representation that parses back to the same bits, so every format
//! round-trips exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SesError};
use crate::linalg::{ComplexMatrix, RealSymmetricMatrix};
use crate::pulse::{DeviceParams, PulseSchedule, PulseStep, ScheduleMetadata};
use crate::state::SesState;

/// Relative tolerance for the `total_theta` / `duration_ns` consistency check on load.
pub const RECOMPUTE_TOL: f64 = 1e-9;

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| SesError::Format(e.to_string()))
}

fn render<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("in-memory JSON serialization cannot fail")
}

/// `{ "n": int, "entries": [[[re, im], ...], ...] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let entries = (0..m.rows()).map(|i| m.row(i).iter().copied().map(pair).collect()).collect();
        Self { n: m.rows(), entries }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.n) {
            return Err(SesError::Format(format!("entries must be {0}x{0}", self.n)));
        }
        if self.n == 0 {
            return Err(SesError::Format("n must be positive".into()));
        }
        let rows: Vec<Vec<Complex64>> = self.entries.iter().map(|r| r.iter().copied().map(complex).collect()).collect();
        ComplexMatrix::from_rows(&rows)
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn to_json(&self) -> String {
        render(self)
    }
}

/// `{ "n": int, "amplitudes": [[re, im], ...] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(s: &SesState) -> Self {
        Self { n: s.dim(), amplitudes: s.amplitudes().iter().copied().map(pair).collect() }
    }

    pub fn amplitudes(&self) -> Result<Vec<Complex64>> {
        if self.amplitudes.len() != self.n || self.n == 0 {
            return Err(SesError::Format(format!("expected {} amplitudes, got {}", self.n, self.amplitudes.len())));
        }
        Ok(self.amplitudes.iter().copied().map(complex).collect())
    }

    /// Normalized state; fails if `|psi|^2` is off by more than `SesState`'s tolerance.
    pub fn to_state(&self) -> Result<SesState> {
        SesState::new(self.amplitudes()?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn to_json(&self) -> String {
        render(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepRecord {
    pub label: String,
    pub theta: f64,
    #[serde(rename = "K")]
    pub k: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetadataRecord {
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default = "default_shape")]
    pub pulse_shape: String,
    #[serde(default = "default_device")]
    pub device: String,
}

fn default_shape() -> String {
    ScheduleMetadata::new("").pulse_shape
}

fn default_device() -> String {
    DeviceParams::default().name
}

/// Serialized [`PulseSchedule`]. Angles are canonical; `duration_ns` is checked on load.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleFile {
    pub n: usize,
    pub g_max_mhz_over_2pi: f64,
    pub steps: Vec<StepRecord>,
    pub total_theta: f64,
    pub duration_ns: f64,
    pub metadata: MetadataRecord,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= RECOMPUTE_TOL * a.abs().max(b.abs()).max(1.0)
}

impl ScheduleFile {
    pub fn from_schedule(s: &PulseSchedule) -> Self {
        let steps = s
            .steps()
            .iter()
            .map(|p| StepRecord { label: p.label().to_string(), theta: p.theta(), k: p.k().to_rows() })
            .collect();
        Self {
            n: s.dim(),
            g_max_mhz_over_2pi: s.device().g_max_over_2pi_mhz,
            steps,
            total_theta: s.total_angle(),
            duration_ns: s.duration_ns(),
            metadata: MetadataRecord {
                source: s.metadata.source.clone(),
                seed: s.metadata.seed,
                pulse_shape: s.metadata.pulse_shape.clone(),
                device: s.device().name.clone(),
            },
        }
    }

    pub fn to_schedule(&self) -> Result<PulseSchedule> {
        let device = DeviceParams::new(self.g_max_mhz_over_2pi, self.metadata.device.clone())?;
        let mut schedule = PulseSchedule::new(self.n, device, self.metadata.source.clone());
        schedule.metadata.seed = self.metadata.seed;
        schedule.metadata.pulse_shape = self.metadata.pulse_shape.clone();
        for (idx, step) in self.steps.iter().enumerate() {
            if step.k.len() != self.n || step.k.iter().any(|r| r.len() != self.n) {
                return Err(SesError::Format(format!("step {idx}: K must be {0}x{0}", self.n)));
            }
            let k = RealSymmetricMatrix::from_rows(&step.k)?;
            schedule.push(PulseStep::new(k, step.theta, step.label.clone())?)?;
        }
        if !close(schedule.total_angle(), self.total_theta) {
            return Err(SesError::Format(format!(
                "total_theta {} does not match the sum of step angles {}",
                self.total_theta,
                schedule.total_angle()
            )));
        }
        if !close(schedule.duration_ns(), self.duration_ns) {
            return Err(SesError::Format(format!(
                "duration_ns {} does not match {} recomputed from total_theta and g_max",
                self.duration_ns,
                schedule.duration_ns()
            )));
        }
        Ok(schedule)
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn to_json(&self) -> String {
        render(self)
    }
}

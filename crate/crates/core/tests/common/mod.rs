// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! Reference computations kept apart from the library: dense row-major
//! complex matrices, a Taylor-series exponential with scaling and squaring,
//! and plain trace/fidelity formulas.

#![allow(dead_code)]

use num_complex::Complex64;
use ses_core::{ComplexMatrix, PulseSchedule};

pub type Dense = Vec<Vec<Complex64>>;

pub fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

pub fn eye(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| if i == j { Complex64::new(1.0, 0.0) } else { zero() }).collect()).collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![zero(); m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            let aik = a[i][k];
            for j in 0..m {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn adjoint(a: &Dense) -> Dense {
    let n = a.len();
    (0..a[0].len()).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

pub fn dense(m: &ComplexMatrix) -> Dense {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn max_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `exp(-i t H)` for any square `H`, by Taylor series on `-i t H / 2^s`.
pub fn expm_i(h: &Dense, t: f64) -> Dense {
    let n = h.len();
    let norm: f64 = h.iter().map(|r| r.iter().map(|x| x.norm()).sum::<f64>()).fold(0.0, f64::max) * t.abs();
    let mut s = 0;
    while norm / f64::powi(2.0, s) > 0.25 {
        s += 1;
    }
    let scale = Complex64::new(0.0, -t / f64::powi(2.0, s));
    let x: Dense = h.iter().map(|r| r.iter().map(|&v| scale * v).collect()).collect();
    let mut sum = eye(n);
    let mut term = eye(n);
    for j in 1..=30 {
        term = matmul(&term, &x);
        let inv = Complex64::new(1.0 / j as f64, 0.0);
        for row in term.iter_mut() {
            for z in row.iter_mut() {
                *z *= inv;
            }
        }
        for (srow, trow) in sum.iter_mut().zip(&term) {
            for (a, b) in srow.iter_mut().zip(trow) {
                *a += b;
            }
        }
    }
    for _ in 0..s {
        sum = matmul(&sum, &sum);
    }
    sum
}

/// `exp(-i theta K)` for real `K`.
pub fn expm_pulse(theta: f64, k: &[Vec<f64>]) -> Dense {
    let h: Dense = k.iter().map(|r| r.iter().map(|&v| Complex64::new(v, 0.0)).collect()).collect();
    expm_i(&h, theta)
}

pub fn real_dense(m: &[Vec<f64>]) -> Dense {
    m.iter().map(|r| r.iter().map(|&v| Complex64::new(v, 0.0)).collect()).collect()
}

/// Net operator of a schedule, first step applied first.
pub fn schedule_operator(s: &PulseSchedule) -> Dense {
    let mut total = eye(s.dim());
    for step in s.steps() {
        total = matmul(&expm_pulse(step.theta(), &step.k().to_rows()), &total);
    }
    total
}

/// `|Tr(U^dag W)| / n`.
pub fn phase_fidelity(u: &Dense, w: &Dense) -> f64 {
    let n = u.len();
    let mut tr = zero();
    for i in 0..n {
        for j in 0..n {
            tr += u[i][j].conj() * w[i][j];
        }
    }
    tr.norm() / n as f64
}

pub fn apply(u: &Dense, v: &[Complex64]) -> Vec<Complex64> {
    u.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// `|<a|b>|` for vectors.
pub fn overlap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>().norm()
}

/// `Tr(rho O)`.
pub fn trace_product(rho: &Dense, o: &Dense) -> f64 {
    let n = rho.len();
    let mut tr = zero();
    for i in 0..n {
        for j in 0..n {
            tr += rho[i][j] * o[j][i];
        }
    }
    tr.re
}

/// `max |Q^T Q - I|` for real `Q`.
pub fn orthogonality_residual(q: &[Vec<f64>]) -> f64 {
    let n = q.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let dot: f64 = (0..n).map(|k| q[k][i] * q[k][j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).abs());
        }
    }
    worst
}

/// Least-squares fit of `ln y = ln c + p ln x`; returns `(c, p)`.
pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let m = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / m, ly.iter().sum::<f64>() / m);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let p = sxy / sxx;
    ((my - p * mx).exp(), p)
}

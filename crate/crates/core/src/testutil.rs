// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! Test-only oracles, independent of the eigensolvers.

use num_complex::Complex64;

use crate::linalg::ComplexMatrix;
use crate::state::SesState;

pub(crate) use crate::fixtures::five_qubit_compiled_unitary as reference_compiled_u;

pub(crate) fn nearest_unitary(m: &ComplexMatrix) -> ComplexMatrix {
    crate::linalg::nearest_unitary(m).expect("reference matrix is nonsingular")
}

pub(crate) fn reference_target() -> SesState {
    crate::fixtures::five_qubit_target()
}

/// `exp(M)` by scaling and squaring a truncated Taylor series.
pub(crate) fn complex_expm(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    let norm = m.max_abs() * n as f64;
    let squarings = norm.log2().ceil().max(0.0) as i32 + 4;
    let h = m.scale(Complex64::new(2f64.powi(-squarings), 0.0));
    let mut term = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::identity(n);
    for k in 1..30 {
        term = (&term * &h).scale(Complex64::new(1.0 / k as f64, 0.0));
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

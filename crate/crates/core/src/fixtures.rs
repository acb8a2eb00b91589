// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! Published reference data for a five-qubit state-preparation example,
//! printed to four decimals.

use num_complex::Complex64;

use crate::linalg::{ComplexMatrix, RealSymmetricMatrix};
use crate::state::SesState;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Target amplitudes, first component real.
pub const FIVE_QUBIT_TARGET: [(f64, f64); 5] =
    [(0.4829, 0.0), (-0.5478, -0.0575), (0.1142, 0.2387), (0.4095, 0.2400), (-0.3215, 0.2545)];

/// The target state, renormalized (the printed amplitudes are rounded).
pub fn five_qubit_target() -> SesState {
    SesState::normalized(FIVE_QUBIT_TARGET.iter().map(|&(re, im)| c(re, im)).collect())
        .expect("reference target is nonzero")
}

/// Compiled preparation unitary as printed, unitary only to about 1e-4.
pub fn five_qubit_compiled_unitary() -> ComplexMatrix {
    let rows = vec![
        vec![c(0.4829, 0.0), c(0.4499, -0.0158), c(0.4499, -0.0158), c(0.4478, -0.0133), c(0.3984, 0.0450)],
        vec![c(-0.5478, -0.0575), c(0.5855, -0.4153), c(0.1778, -0.0249), c(-0.1305, 0.2703), c(-0.0855, 0.2273)],
        vec![c(0.1142, 0.2387), c(0.4664, 0.0700), c(-0.7862, -0.2582), c(0.0910, -0.0284), c(0.1145, -0.0222)],
        vec![c(0.4095, 0.2400), c(0.0841, -0.1271), c(0.1471, -0.1492), c(-0.7941, 0.1818), c(0.1471, -0.1492)],
        vec![c(-0.3215, 0.2545), c(0.1071, 0.1577), c(0.1071, 0.1577), c(0.1071, 0.1580), c(0.1399, -0.8386)],
    ];
    ComplexMatrix::from_rows(&rows).expect("reference matrix is square")
}

/// Printed generator `A` of the example.
pub fn five_qubit_generator_a() -> RealSymmetricMatrix {
    RealSymmetricMatrix::from_rows(&[
        vec![-1.1145, 0.1981, 0.3247, -0.0776, -0.1888],
        vec![0.1981, -2.6988, 0.0219, -0.2069, -0.0249],
        vec![0.3247, 0.0219, -1.9798, -0.5623, 0.1052],
        vec![-0.0776, -0.2069, -0.5623, -0.5291, -0.0747],
        vec![-0.1888, -0.0249, 0.1052, -0.0747, -1.7104],
    ])
    .expect("reference A is symmetric")
}

/// Printed generator `B` of the example.
pub fn five_qubit_generator_b() -> RealSymmetricMatrix {
    RealSymmetricMatrix::from_rows(&[
        vec![-3.0826, 1.8972, 0.3983, 0.8753, 0.5934],
        vec![1.8972, -3.7784, 0.5761, 0.3537, 0.5581],
        vec![0.3983, 0.5761, -3.2370, 0.1664, 0.2327],
        vec![0.8753, 0.3537, 0.1664, -2.6191, 0.1488],
        vec![0.5934, 0.5581, 0.2327, 0.1488, -4.6171],
    ])
    .expect("reference B is symmetric")
}

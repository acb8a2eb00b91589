// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded inputs shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ses_core::random::{haar_unitary, random_state, random_symmetric};
use ses_core::{ComplexMatrix, RealSymmetricMatrix, SesState};

/// Sizes swept by every benchmark group.
pub const SIZES: [usize; 4] = [8, 16, 32, 64];

fn rng(n: usize, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(salt.wrapping_mul(1_000_003) ^ n as u64)
}

pub fn unitary_input(n: usize) -> ComplexMatrix {
    haar_unitary(n, &mut rng(n, 1))
}

pub fn symmetric_input(n: usize) -> RealSymmetricMatrix {
    random_symmetric(n, &mut rng(n, 2))
}

pub fn state_input(n: usize) -> SesState {
    random_state(n, &mut rng(n, 3))
}

// SPDX-License-Identifier: Apache-2.0

//! Synthetic datasets for benchmarking.

use greyrank_core::{AreaSeries, AssessmentInput, IndexDefinition, IndexOrientation, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `areas` areas over `indices` x `periods` benefit-oriented scores in
/// `[0, 100)`, equal weights.
pub fn synthetic(areas: usize, indices: usize, periods: usize, seed: u64) -> AssessmentInput {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    AssessmentInput {
        description: None,
        indices: (0..indices)
            .map(|j| {
                IndexDefinition::new(format!("e{j}"), format!("index {j}"), IndexOrientation::Benefit, 1.0 / indices as f64)
            })
            .collect(),
        periods: (0..periods).map(|t| format!("t{t}")).collect(),
        time_weights: vec![1.0 / periods as f64; periods],
        areas: (0..areas)
            .map(|i| AreaSeries::new(format!("u{i}"), Matrix::from_fn(indices, periods, |_, _| rng.gen_range(0.0..100.0))))
            .collect(),
    }
}

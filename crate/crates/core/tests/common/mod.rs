// SPDX-License-Identifier: Apache-2.0

//! Test-only oracles, independent of the library's computation paths.

#![allow(dead_code)]

use greyrank_core::Matrix;
use rand::Rng;

// 5-point Gauss-Legendre on [-1, 1]
const GL_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189,
    0.478_628_670_499_366,
    0.568_888_888_888_889,
    0.478_628_670_499_366,
    0.236_926_885_056_189,
];

/// Gauss-Legendre quadrature of `f` over `[a, b]`.
fn gauss(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    GL_NODES
        .iter()
        .zip(GL_WEIGHTS)
        .map(|(&x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Height of the surface over the unit cell with corner heights
/// `c00, c10, c01, c11`, triangulated along the anti-diagonal from (1,0) to
/// (0,1).
pub fn triangulated_height(c00: f64, c10: f64, c01: f64, c11: f64, x: f64, y: f64) -> f64 {
    if x + y <= 1.0 {
        c00 + (c10 - c00) * x + (c01 - c00) * y
    } else {
        c11 + (c01 - c11) * (1.0 - x) + (c10 - c11) * (1.0 - y)
    }
}

/// Numerical double integral of the triangulated surface over the unit cell,
/// integrating each triangle separately so the kink is never straddled.
pub fn cell_volume_quadrature(c00: f64, c10: f64, c01: f64, c11: f64) -> f64 {
    let h = |x: f64, y: f64| triangulated_height(c00, c10, c01, c11, x, y);
    let lower = gauss(0.0, 1.0, |x| gauss(0.0, 1.0 - x, |y| h(x, y)));
    let upper = gauss(0.0, 1.0, |x| gauss(1.0 - x, 1.0, |y| h(x, y)));
    lower + upper
}

/// Per-window quadrature volumes of `z`; rows step the first axis.
pub fn oracle_local_volume(z: &Matrix) -> Matrix {
    Matrix::from_fn(z.nrows() - 1, z.ncols() - 1, |i, j| {
        cell_volume_quadrature(z[(i, j)], z[(i + 1, j)], z[(i, j + 1)], z[(i + 1, j + 1)])
    })
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, lo: f64, hi: f64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.gen_range(lo..hi))
}

use greyrank_core::{AreaSeries, AssessmentInput, IndexDefinition, IndexOrientation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random valid dataset. Orientations are mixed unless `benefit_only`.
/// Scores are integers in `[0, 100]` so ties and degenerate columns occur.
pub fn random_input(seed: u64, benefit_only: bool) -> AssessmentInput {
    let mut rng = rng(seed);
    let n = rng.gen_range(2..=5);
    let m = rng.gen_range(2..=6);
    let t = rng.gen_range(2..=6);
    let raw_w: Vec<f64> = (0..m).map(|_| rng.gen_range(0.1..1.0)).collect();
    let sum_w: f64 = raw_w.iter().sum();
    let raw_t: Vec<f64> = (0..t).map(|_| rng.gen_range(0.1..1.0)).collect();
    let sum_t: f64 = raw_t.iter().sum();
    let indices = (0..m)
        .map(|j| {
            let orientation = if benefit_only {
                IndexOrientation::Benefit
            } else {
                match rng.gen_range(0..4) {
                    0 => IndexOrientation::Benefit,
                    1 => IndexOrientation::Cost,
                    2 => IndexOrientation::Intermediate,
                    _ => {
                        let low = rng.gen_range(0..80) as f64;
                        IndexOrientation::Interval {
                            low,
                            high: low + rng.gen_range(0..20) as f64,
                        }
                    }
                }
            };
            IndexDefinition::new(format!("e{j}"), format!("index {j}"), orientation, raw_w[j] / sum_w)
        })
        .collect();
    AssessmentInput {
        description: None,
        indices,
        periods: (0..t).map(|k| format!("p{k}")).collect(),
        time_weights: raw_t.iter().map(|w| w / sum_t).collect(),
        areas: (0..n)
            .map(|i| {
                AreaSeries::new(
                    format!("area{i}"),
                    Matrix::from_fn(m, t, |_, _| rng.gen_range(0..=100) as f64),
                )
            })
            .collect(),
    }
}

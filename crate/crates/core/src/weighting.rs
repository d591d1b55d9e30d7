// SPDX-License-Identifier: Apache-2.0

//! Weighted standardized matrices and the positive/negative ideal matrices.

use crate::error::{Error, Result};
use crate::model::Matrix;

/// `C[j][t] = index_weights[j] * B[j][t] * time_weights[t]`.
pub fn apply_weights(standardized: &Matrix, index_weights: &[f64], time_weights: &[f64]) -> Result<Matrix> {
    let (m, t) = standardized.shape();
    if index_weights.len() != m || time_weights.len() != t {
        return Err(Error::shape((m, t), (index_weights.len(), time_weights.len())));
    }
    Ok(Matrix::from_fn(m, t, |j, k| {
        index_weights[j] * standardized[(j, k)] * time_weights[k]
    }))
}

fn elementwise(matrices: &[Matrix], pick: fn(f64, f64) -> f64) -> Result<Matrix> {
    let (first, rest) = matrices
        .split_first()
        .ok_or(Error::Empty { what: "weighted matrix list" })?;
    let mut out = first.clone();
    for c in rest {
        if c.shape() != out.shape() {
            return Err(Error::shape(out.shape(), c.shape()));
        }
        out.zip_apply(c, |acc, v| *acc = pick(*acc, v));
    }
    Ok(out)
}

/// Elementwise maximum over all areas (the riskiest profile).
pub fn positive_ideal(weighted: &[Matrix]) -> Result<Matrix> {
    elementwise(weighted, f64::max)
}

/// Elementwise minimum over all areas (the safest profile).
pub fn negative_ideal(weighted: &[Matrix]) -> Result<Matrix> {
    elementwise(weighted, f64::min)
}

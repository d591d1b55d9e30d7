// SPDX-License-Identifier: Apache-2.0

//! Standardization of raw dynamic evaluation matrices onto `[0, 1]`.
//!
//! Extrema are global: for index `j` they range over every area and every
//! period, so the standardized matrices of all areas share one scale.

use serde::Serialize;

use crate::model::{AssessmentInput, IndexOrientation, Matrix};

/// Per-index reduction over the whole dataset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexExtrema {
    pub id: String,
    pub min_val: f64,
    pub max_val: f64,
    /// Median across areas at each period; intermediate indices only.
    pub medians: Option<Vec<f64>>,
    /// Largest `|a - median(t)|` over all areas and periods; intermediate only.
    pub max_abs_dev: Option<f64>,
}

impl IndexExtrema {
    /// Plain min/max extrema, for benefit, cost and interval indices.
    pub fn new(id: impl Into<String>, min_val: f64, max_val: f64) -> Self {
        Self {
            id: id.into(),
            min_val,
            max_val,
            medians: None,
            max_abs_dev: None,
        }
    }
}

/// Median of a non-empty slice; even lengths use the midpoint of the two
/// central values.
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of empty slice");
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    }
}

pub fn compute_extrema(input: &AssessmentInput) -> Vec<IndexExtrema> {
    let periods = input.period_count();
    input
        .indices
        .iter()
        .enumerate()
        .map(|(j, index)| {
            let cells = input
                .areas
                .iter()
                .flat_map(|a| a.values.row(j).iter().copied().collect::<Vec<_>>());
            let (min_val, max_val) = cells.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            });
            let mut extrema = IndexExtrema::new(index.id.clone(), min_val, max_val);

            if index.orientation == IndexOrientation::Intermediate {
                let medians: Vec<f64> = (0..periods)
                    .map(|t| {
                        let column: Vec<f64> = input.areas.iter().map(|a| a.values[(j, t)]).collect();
                        median(&column)
                    })
                    .collect();
                let max_abs_dev = input
                    .areas
                    .iter()
                    .flat_map(|a| (0..periods).map(move |t| (a, t)))
                    .map(|(a, t)| (a.values[(j, t)] - medians[t]).abs())
                    .fold(0.0, f64::max);
                extrema.medians = Some(medians);
                extrema.max_abs_dev = Some(max_abs_dev);
            }
            extrema
        })
        .collect()
}

/// Larger is riskier. A constant index maps to 0.5.
pub fn standardize_benefit(a: f64, extrema: &IndexExtrema) -> f64 {
    let range = extrema.max_val - extrema.min_val;
    if range == 0.0 {
        return 0.5;
    }
    ((a - extrema.min_val) / range).clamp(0.0, 1.0)
}

/// Larger is safer. A constant index maps to 0.5.
pub fn standardize_cost(a: f64, extrema: &IndexExtrema) -> f64 {
    let range = extrema.max_val - extrema.min_val;
    if range == 0.0 {
        return 0.5;
    }
    ((extrema.max_val - a) / range).clamp(0.0, 1.0)
}

/// Closeness to the period median. Panics if `extrema` was not computed for
/// an intermediate index.
pub fn standardize_intermediate(a: f64, period: usize, extrema: &IndexExtrema) -> f64 {
    let medians = extrema
        .medians
        .as_ref()
        .expect("intermediate extrema carry medians");
    let dev = extrema.max_abs_dev.expect("intermediate extrema carry max_abs_dev");
    if dev == 0.0 {
        return 1.0;
    }
    (1.0 - (a - medians[period]).abs() / dev).clamp(0.0, 1.0)
}

/// 1 inside `[low, high]`, decaying linearly outside it.
pub fn standardize_interval(a: f64, extrema: &IndexExtrema, low: f64, high: f64) -> f64 {
    if (low..=high).contains(&a) {
        return 1.0;
    }
    let den = (low - extrema.min_val).max(extrema.max_val - high);
    if den <= 0.0 {
        return 1.0;
    }
    let gap = if a < low { low - a } else { a - high };
    (1.0 - gap / den).clamp(0.0, 1.0)
}

/// Standardizes a single cell according to its index orientation.
pub fn standardize_cell(a: f64, period: usize, orientation: IndexOrientation, extrema: &IndexExtrema) -> f64 {
    match orientation {
        IndexOrientation::Benefit => standardize_benefit(a, extrema),
        IndexOrientation::Cost => standardize_cost(a, extrema),
        IndexOrientation::Intermediate => standardize_intermediate(a, period, extrema),
        IndexOrientation::Interval { low, high } => standardize_interval(a, extrema, low, high),
    }
}

/// Standardized matrices `B_i`, one per area, in input order.
pub fn standardize_all(input: &AssessmentInput) -> Vec<Matrix> {
    let extrema = compute_extrema(input);
    standardize_with(input, &extrema)
}

pub fn standardize_with(input: &AssessmentInput, extrema: &[IndexExtrema]) -> Vec<Matrix> {
    input
        .areas
        .iter()
        .map(|area| {
            Matrix::from_fn(area.values.nrows(), area.values.ncols(), |j, t| {
                standardize_cell(area.values[(j, t)], t, input.indices[j].orientation, &extrema[j])
            })
        })
        .collect()
}

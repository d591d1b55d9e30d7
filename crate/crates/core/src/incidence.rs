// SPDX-License-Identifier: Apache-2.0

//! Volumetric grey incidence between a reference matrix and a family of
//! behaviour matrices.
//!
//! Each matrix is re-based by a [`ZeroingMode`], then reduced to a *local
//! volume matrix*: for every 2x2 window of neighbouring cells, the signed
//! volume under the piecewise-linear surface spanned by the four corners when
//! the unit cell is split into two triangles along its anti-diagonal. The
//! absolute differences between the reference volumes and each factor's
//! volumes are rescaled by the family-wide extreme differences into grey
//! incidence coefficients in `[0, 1]`, and the mean coefficient is the
//! factor's incidence degree.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Matrix;

/// How a behaviour matrix is re-based before its volumes are taken.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroingMode {
    /// Subtract each row's first entry, so every index series starts at 0.
    #[default]
    FirstColumn,
    /// Subtract the top-left entry from the whole matrix.
    FirstElement,
    /// Use the matrix as is.
    None,
}

impl ZeroingMode {
    pub const ALL: [ZeroingMode; 3] = [ZeroingMode::FirstColumn, ZeroingMode::FirstElement, ZeroingMode::None];

    pub fn as_str(self) -> &'static str {
        match self {
            ZeroingMode::FirstColumn => "first-column",
            ZeroingMode::FirstElement => "first-element",
            ZeroingMode::None => "none",
        }
    }
}

impl fmt::Display for ZeroingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ZeroingMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ZeroingMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown zeroing mode `{s}` (expected first-column, first-element or none)"))
    }
}

pub fn zeroing_image(c: &Matrix, mode: ZeroingMode) -> Matrix {
    match mode {
        ZeroingMode::FirstColumn => Matrix::from_fn(c.nrows(), c.ncols(), |j, t| c[(j, t)] - c[(j, 0)]),
        ZeroingMode::FirstElement => {
            let origin = c[(0, 0)];
            c.map(|v| v - origin)
        }
        ZeroingMode::None => c.clone(),
    }
}

/// Local volume matrix, shape `(m-1) x (T-1)`.
///
/// Diagonal corners of each window weigh 1/6, anti-diagonal corners 1/3.
pub fn local_volume(zeroed: &Matrix) -> Matrix {
    let (m, t) = zeroed.shape();
    assert!(m >= 2 && t >= 2, "local volume needs at least a 2x2 matrix, got {m}x{t}");
    Matrix::from_fn(m - 1, t - 1, |i, j| {
        (zeroed[(i, j)] + zeroed[(i + 1, j + 1)]) / 6.0 + (zeroed[(i + 1, j)] + zeroed[(i, j + 1)]) / 3.0
    })
}

/// Elementwise `|reference - factor|`.
pub fn volume_difference(reference: &Matrix, factor: &Matrix) -> Result<Matrix> {
    if reference.shape() != factor.shape() {
        return Err(Error::shape(reference.shape(), factor.shape()));
    }
    Ok(reference.zip_map(factor, |a, b| (a - b).abs()))
}

/// Grey coefficients and degrees for a family of volume difference matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct GreyCoefficients {
    pub d_max: f64,
    pub d_min: f64,
    pub coefficients: Vec<Matrix>,
    pub degrees: Vec<f64>,
}

/// Rescales a family of difference matrices into coefficient matrices and
/// mean-coefficient degrees.
///
/// `d_max` and `d_min` are taken jointly over the whole family. When
/// `d_max = 0` or `d_max = d_min` nothing can be discriminated and every
/// coefficient is 1.
pub fn grey_coefficients(differences: &[Matrix]) -> Result<GreyCoefficients> {
    let first = differences.first().ok_or(Error::Empty { what: "factor list" })?;
    if let Some(bad) = differences.iter().find(|d| d.shape() != first.shape()) {
        return Err(Error::shape(first.shape(), bad.shape()));
    }
    let all = differences.iter().flat_map(|d| d.iter().copied());
    let (d_min, d_max) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));

    let flat = d_max == 0.0 || d_max == d_min;
    let span = d_max - d_min;
    let coefficients: Vec<Matrix> = differences
        .iter()
        .map(|d| if flat { d.map(|_| 1.0) } else { d.map(|v| (d_max - v) / span) })
        .collect();
    let degrees = coefficients.iter().map(|g| g.sum() / g.len() as f64).collect();

    Ok(GreyCoefficients {
        d_max,
        d_min,
        coefficients,
        degrees,
    })
}

/// Full incidence computation of one reference against several factors.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceFamilyResult {
    pub reference_label: String,
    pub mode: ZeroingMode,
    pub reference_volume: Matrix,
    pub factor_volumes: Vec<Matrix>,
    pub differences: Vec<Matrix>,
    pub d_max: f64,
    pub d_min: f64,
    pub coefficients: Vec<Matrix>,
    /// Incidence degree of each factor, in factor order.
    pub degrees: Vec<f64>,
}

pub fn incidence_family(
    reference_label: impl Into<String>,
    reference: &Matrix,
    factors: &[Matrix],
    mode: ZeroingMode,
) -> Result<IncidenceFamilyResult> {
    if factors.is_empty() {
        return Err(Error::Empty { what: "factor list" });
    }
    let (m, t) = reference.shape();
    if m < 2 || t < 2 {
        return Err(Error::Shape {
            expected: "at least 2x2".into(),
            found: format!("{m}x{t}"),
        });
    }
    if let Some(bad) = factors.iter().find(|f| f.shape() != reference.shape()) {
        return Err(Error::shape(reference.shape(), bad.shape()));
    }

    let reference_volume = local_volume(&zeroing_image(reference, mode));
    let factor_volumes: Vec<Matrix> = factors
        .iter()
        .map(|f| local_volume(&zeroing_image(f, mode)))
        .collect();
    let differences = factor_volumes
        .iter()
        .map(|v| volume_difference(&reference_volume, v))
        .collect::<Result<Vec<_>>>()?;
    let GreyCoefficients {
        d_max,
        d_min,
        coefficients,
        degrees,
    } = grey_coefficients(&differences)?;

    Ok(IncidenceFamilyResult {
        reference_label: reference_label.into(),
        mode,
        reference_volume,
        factor_volumes,
        differences,
        d_max,
        d_min,
        coefficients,
        degrees,
    })
}

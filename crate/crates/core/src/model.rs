// SPDX-License-Identifier: Apache-2.0

//! Domain types for a dynamic assessment problem and their validation.
//!
//! An [`AssessmentInput`] holds `m` index definitions, `T` period labels with
//! their time weights, and `n` areas. Every area carries an `m x T` matrix of
//! raw scores: row `j` is index `j`, column `t` is period `t`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationErrors};

/// Dense `f64` matrix used for every stage of the computation.
pub type Matrix = nalgebra::DMatrix<f64>;

/// Accepted distance of a weight vector's sum from 1.0.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-2;

/// How a raw score maps onto risk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "OrientationRepr", into = "OrientationRepr")]
pub enum IndexOrientation {
    /// Larger value, higher risk.
    Benefit,
    /// Larger value, lower risk.
    Cost,
    /// Values near the per-period median are riskiest.
    Intermediate,
    /// Values inside `[low, high]` are riskiest.
    Interval { low: f64, high: f64 },
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum OrientationRepr {
    Benefit,
    Cost,
    Intermediate,
    Interval([f64; 2]),
}

impl From<OrientationRepr> for IndexOrientation {
    fn from(r: OrientationRepr) -> Self {
        match r {
            OrientationRepr::Benefit => IndexOrientation::Benefit,
            OrientationRepr::Cost => IndexOrientation::Cost,
            OrientationRepr::Intermediate => IndexOrientation::Intermediate,
            OrientationRepr::Interval([low, high]) => IndexOrientation::Interval { low, high },
        }
    }
}

impl From<IndexOrientation> for OrientationRepr {
    fn from(o: IndexOrientation) -> Self {
        match o {
            IndexOrientation::Benefit => OrientationRepr::Benefit,
            IndexOrientation::Cost => OrientationRepr::Cost,
            IndexOrientation::Intermediate => OrientationRepr::Intermediate,
            IndexOrientation::Interval { low, high } => OrientationRepr::Interval([low, high]),
        }
    }
}

impl fmt::Display for IndexOrientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexOrientation::Benefit => f.write_str("benefit"),
            IndexOrientation::Cost => f.write_str("cost"),
            IndexOrientation::Intermediate => f.write_str("intermediate"),
            IndexOrientation::Interval { low, high } => write!(f, "interval[{low}, {high}]"),
        }
    }
}

/// One evaluation criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexDefinition {
    pub id: String,
    pub name: String,
    pub orientation: IndexOrientation,
    pub weight: f64,
}

impl IndexDefinition {
    pub fn new(id: impl Into<String>, name: impl Into<String>, orientation: IndexOrientation, weight: f64) -> Self {
        Self {
            id: id.into(),
            name: name.into(),
            orientation,
            weight,
        }
    }
}

/// One area's dynamic evaluation matrix of raw scores (`m x T`).
#[derive(Debug, Clone, PartialEq)]
pub struct AreaSeries {
    pub name: String,
    pub values: Matrix,
}

impl AreaSeries {
    pub fn new(name: impl Into<String>, values: Matrix) -> Self {
        Self {
            name: name.into(),
            values,
        }
    }

    /// Builds from index-major rows. Panics if rows are ragged.
    pub fn from_rows(name: impl Into<String>, rows: &[Vec<f64>]) -> Self {
        let m = rows.len();
        let t = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == t), "ragged rows");
        Self::new(name, Matrix::from_fn(m, t, |j, k| rows[j][k]))
    }
}

/// A complete assessment problem.
#[derive(Debug, Clone, PartialEq)]
pub struct AssessmentInput {
    /// Free-form note carried through file round trips.
    pub description: Option<String>,
    pub indices: Vec<IndexDefinition>,
    pub periods: Vec<String>,
    pub time_weights: Vec<f64>,
    pub areas: Vec<AreaSeries>,
}

impl AssessmentInput {
    pub fn index_count(&self) -> usize {
        self.indices.len()
    }

    pub fn period_count(&self) -> usize {
        self.periods.len()
    }

    pub fn area_count(&self) -> usize {
        self.areas.len()
    }

    pub fn index_weights(&self) -> Vec<f64> {
        self.indices.iter().map(|i| i.weight).collect()
    }

    pub fn index_weight_sum(&self) -> f64 {
        self.indices.iter().map(|i| i.weight).sum()
    }

    pub fn time_weight_sum(&self) -> f64 {
        self.time_weights.iter().sum()
    }

    /// Collects every invariant violation. Empty means valid.
    pub fn issues(&self) -> Vec<ValidationIssue> {
        let mut issues = Vec::new();
        let m = self.index_count();
        let t = self.period_count();

        if m < 2 {
            issues.push(ValidationIssue::TooFewIndices(m));
        }
        if t < 2 {
            issues.push(ValidationIssue::TooFewPeriods(t));
        }
        if self.area_count() < 2 {
            issues.push(ValidationIssue::TooFewAreas(self.area_count()));
        }
        if self.time_weights.len() != t {
            issues.push(ValidationIssue::TimeWeightCount {
                expected: t,
                found: self.time_weights.len(),
            });
        }

        let mut seen = HashSet::new();
        for index in &self.indices {
            if index.id.trim().is_empty() {
                issues.push(ValidationIssue::EmptyIndexId);
            } else if !seen.insert(index.id.as_str()) {
                issues.push(ValidationIssue::DuplicateIndexId(index.id.clone()));
            }
            if !(index.weight.is_finite() && index.weight > 0.0 && index.weight <= 1.0) {
                issues.push(ValidationIssue::IndexWeightRange {
                    id: index.id.clone(),
                    weight: index.weight,
                });
            }
            if let IndexOrientation::Interval { low, high } = index.orientation {
                if !(low.is_finite() && high.is_finite() && low <= high) {
                    issues.push(ValidationIssue::IntervalBounds {
                        id: index.id.clone(),
                        low,
                        high,
                    });
                }
            }
        }

        let mut seen_periods = HashSet::new();
        for label in &self.periods {
            if !seen_periods.insert(label.as_str()) {
                issues.push(ValidationIssue::DuplicatePeriod(label.clone()));
            }
        }
        for (k, &w) in self.time_weights.iter().enumerate() {
            if !(w.is_finite() && w >= 0.0) {
                issues.push(ValidationIssue::TimeWeightRange { position: k + 1, weight: w });
            }
        }

        if m > 0 {
            let sum = self.index_weight_sum();
            if sum.is_nan() || (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
                issues.push(ValidationIssue::IndexWeightSum(sum));
            }
        }
        if !self.time_weights.is_empty() {
            let sum = self.time_weight_sum();
            if sum.is_nan() || (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
                issues.push(ValidationIssue::TimeWeightSum(sum));
            }
        }

        for area in &self.areas {
            let shape = area.values.shape();
            if shape != (m, t) {
                issues.push(ValidationIssue::AreaShape {
                    area: area.name.clone(),
                    expected: (m, t),
                    found: shape,
                });
            }
            let bad = area.values.iter().filter(|v| !v.is_finite()).count();
            if bad > 0 {
                issues.push(ValidationIssue::NonFinite {
                    area: area.name.clone(),
                    count: bad,
                });
            }
        }

        issues
    }
}

/// A single violated invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum ValidationIssue {
    TooFewIndices(usize),
    TooFewPeriods(usize),
    TooFewAreas(usize),
    TimeWeightCount { expected: usize, found: usize },
    EmptyIndexId,
    DuplicateIndexId(String),
    DuplicatePeriod(String),
    IndexWeightRange { id: String, weight: f64 },
    TimeWeightRange { position: usize, weight: f64 },
    IndexWeightSum(f64),
    TimeWeightSum(f64),
    IntervalBounds { id: String, low: f64, high: f64 },
    MissingIntervalBounds(String),
    UnexpectedIntervalBounds(String),
    AreaShape { area: String, expected: (usize, usize), found: (usize, usize) },
    RaggedRows { area: String, row: usize, expected: usize, found: usize },
    NonFinite { area: String, count: usize },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ValidationIssue::*;
        match self {
            TooFewIndices(m) => write!(f, "m ≥ 2 required (got {m} indices)"),
            TooFewPeriods(t) => write!(f, "T ≥ 2 required (got {t} periods)"),
            TooFewAreas(n) => write!(f, "n ≥ 2 required (got {n} areas)"),
            TimeWeightCount { expected, found } => {
                write!(f, "expected {expected} time weights, found {found}")
            }
            EmptyIndexId => f.write_str("index id must not be empty"),
            DuplicateIndexId(id) => write!(f, "duplicate index id `{id}`"),
            DuplicatePeriod(label) => write!(f, "duplicate period label `{label}`"),
            IndexWeightRange { id, weight } => {
                write!(f, "index `{id}` weight {weight} outside (0, 1]")
            }
            TimeWeightRange { position, weight } => {
                write!(f, "time weight #{position} = {weight} must be finite and non-negative")
            }
            IndexWeightSum(sum) => write!(
                f,
                "index weights sum {sum:.2} outside tolerance (|sum - 1| ≤ {WEIGHT_SUM_TOLERANCE})"
            ),
            TimeWeightSum(sum) => write!(
                f,
                "time weights sum {sum:.2} outside tolerance (|sum - 1| ≤ {WEIGHT_SUM_TOLERANCE})"
            ),
            IntervalBounds { id, low, high } => write!(
                f,
                "interval index `{id}` needs finite bounds with low ≤ high (got [{low}, {high}])"
            ),
            MissingIntervalBounds(id) => write!(f, "interval index `{id}` is missing its low/high bounds"),
            UnexpectedIntervalBounds(id) => {
                write!(f, "index `{id}` carries interval bounds but is not interval-type")
            }
            AreaShape { area, expected, found } => write!(
                f,
                "area `{area}` matrix is {}x{}, expected {}x{} (indices x periods, T = {})",
                found.0, found.1, expected.0, expected.1, expected.1
            ),
            RaggedRows { area, row, expected, found } => write!(
                f,
                "area `{area}` row {row} has {found} values, expected T = {expected}"
            ),
            NonFinite { area, count } => {
                write!(f, "area `{area}` has {count} non-finite value(s)")
            }
        }
    }
}

/// Returns the input unchanged when every invariant holds, otherwise the
/// complete list of violations.
pub fn validate_input(input: AssessmentInput) -> Result<AssessmentInput> {
    let issues = input.issues();
    if issues.is_empty() {
        Ok(input)
    } else {
        Err(Error::Validation(ValidationErrors(issues)))
    }
}

/// Secondary indices of the wildland-urban interface fire occurrence index
/// system, all benefit-oriented, weighted by the published weight vector.
pub fn default_wui_schema() -> Vec<IndexDefinition> {
    const ROWS: [(&str, &str, f64); 15] = [
        ("fuel_load", "Fuel Load in the WUI", 0.1458),
        ("fuel_moisture", "Moisture Content of Combustible Materials in the WUI", 0.1303),
        ("fuel_distribution", "Spatial Distribution of Combustible Materials in the WUI", 0.1114),
        (
            "production_fire",
            "Uncontrolled Fire Spread in Agricultural, Forestry, and Livestock Production Regions",
            0.0666,
        ),
        ("domestic_fire", "Domestic Fire Use in Daily Life", 0.0612),
        ("population_density", "Population Density Distribution", 0.0585),
        ("road_density", "Road Network Density", 0.0559),
        ("precipitation", "Precipitation Levels", 0.0650),
        ("relative_humidity", "Relative Humidity", 0.0542),
        ("air_temperature", "Air Temperature", 0.0451),
        ("wind_velocity", "Wind Velocity", 0.0376),
        ("slope_gradient", "Slope Gradient", 0.0450),
        ("slope_aspect", "Slope Aspect", 0.0430),
        ("topographic_position", "Topographic Position", 0.0411),
        ("elevation", "Elevation Above Sea Level", 0.0392),
    ];
    ROWS.iter()
        .map(|&(id, name, w)| IndexDefinition::new(id, name, IndexOrientation::Benefit, w))
        .collect()
}

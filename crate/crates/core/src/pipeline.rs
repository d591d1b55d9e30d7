// SPDX-License-Identifier: Apache-2.0

//! End-to-end assessment: standardize, weight, build ideal matrices, measure
//! incidence against both ideals, then score, rank and classify.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, PipelineStep, Result, ValidationErrors};
use crate::incidence::{incidence_family, ZeroingMode};
use crate::io;
use crate::model::{AssessmentInput, Matrix};
use crate::normalize::standardize_all;
use crate::ranking::{classify, rank_areas, superiority_degree, RiskLevel};
use crate::weighting::{apply_weights, negative_ideal, positive_ideal};

pub const MAX_REPORT_DECIMALS: u8 = 12;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub zeroing_mode: ZeroingMode,
    /// Rescale both weight vectors to sum to exactly 1 before use.
    pub renormalize_weights: bool,
    /// Rounding of the text report only; json and csv keep full precision.
    pub report_decimals: u8,
    pub emit_trace: bool,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            zeroing_mode: ZeroingMode::FirstColumn,
            renormalize_weights: true,
            report_decimals: 2,
            emit_trace: false,
            output_format: OutputFormat::Text,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.report_decimals > MAX_REPORT_DECIMALS {
            return Err(Error::Config(format!(
                "report_decimals {} outside [0, {MAX_REPORT_DECIMALS}]",
                self.report_decimals
            )));
        }
        Ok(())
    }
}

/// Configuration plus what the run actually did with the weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    #[serde(flatten)]
    pub config: RunConfig,
    pub index_weight_sum: f64,
    pub time_weight_sum: f64,
    pub weights_renormalized: bool,
}

/// Every intermediate matrix of a run, areas in input order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageMatrices {
    #[serde(with = "crate::matrix_serde::vec")]
    pub standardized: Vec<Matrix>,
    #[serde(with = "crate::matrix_serde::vec")]
    pub weighted: Vec<Matrix>,
    #[serde(with = "crate::matrix_serde")]
    pub positive_ideal: Matrix,
    #[serde(with = "crate::matrix_serde")]
    pub negative_ideal: Matrix,
    #[serde(with = "crate::matrix_serde::vec")]
    pub area_volumes: Vec<Matrix>,
    #[serde(with = "crate::matrix_serde")]
    pub positive_volume: Matrix,
    #[serde(with = "crate::matrix_serde")]
    pub negative_volume: Matrix,
    #[serde(with = "crate::matrix_serde::vec")]
    pub volume_diff_pos: Vec<Matrix>,
    #[serde(with = "crate::matrix_serde::vec")]
    pub volume_diff_neg: Vec<Matrix>,
    #[serde(with = "crate::matrix_serde::vec")]
    pub coeff_pos: Vec<Matrix>,
    #[serde(with = "crate::matrix_serde::vec")]
    pub coeff_neg: Vec<Matrix>,
    pub d_max_pos: f64,
    pub d_min_pos: f64,
    pub d_max_neg: f64,
    pub d_min_neg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaOutcome {
    pub name: String,
    pub gamma_pos: f64,
    pub gamma_neg: f64,
    pub superiority: f64,
    pub rank: usize,
    pub tied: bool,
    pub level: RiskLevel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssessmentResult {
    pub index_ids: Vec<String>,
    pub periods: Vec<String>,
    /// Input order; see `rank` for the ordering.
    pub areas: Vec<AreaOutcome>,
    pub config: ConfigEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<StageMatrices>,
}

impl AssessmentResult {
    /// Outcomes sorted by rank, ties in input order.
    pub fn ranked(&self) -> Vec<&AreaOutcome> {
        let mut v: Vec<&AreaOutcome> = self.areas.iter().collect();
        v.sort_by_key(|a| a.rank);
        v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssessmentReport {
    pub tool_version: String,
    /// `sha256:` of the canonical json form of the input.
    pub fingerprint: String,
    pub duration_seconds: f64,
    #[serde(flatten)]
    pub result: AssessmentResult,
}

fn at(step: PipelineStep) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Degenerate { .. } => e,
        other => Error::Stage {
            step,
            source: Box::new(other),
        },
    }
}

fn normalized(weights: Vec<f64>, renormalize: bool) -> Vec<f64> {
    if !renormalize {
        return weights;
    }
    let sum: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / sum).collect()
}

/// Runs every step on a validated input and returns the bare result.
pub fn assess(input: &AssessmentInput, config: &RunConfig) -> Result<AssessmentResult> {
    config.validate()?;
    let issues = input.issues();
    if !issues.is_empty() {
        return Err(Error::Validation(ValidationErrors(issues)));
    }

    let index_weight_sum = input.index_weight_sum();
    let time_weight_sum = input.time_weight_sum();
    let lambda = normalized(input.index_weights(), config.renormalize_weights);
    let theta = normalized(input.time_weights.clone(), config.renormalize_weights);

    let standardized = standardize_all(input);
    let weighted = standardized
        .iter()
        .map(|b| apply_weights(b, &lambda, &theta))
        .collect::<Result<Vec<_>>>()
        .map_err(at(PipelineStep::Weighting))?;
    let c_pos = positive_ideal(&weighted).map_err(at(PipelineStep::IdealMatrices))?;
    let c_neg = negative_ideal(&weighted).map_err(at(PipelineStep::IdealMatrices))?;

    let pos = incidence_family("positive ideal", &c_pos, &weighted, config.zeroing_mode)
        .map_err(at(PipelineStep::PositiveIncidence))?;
    let neg = incidence_family("negative ideal", &c_neg, &weighted, config.zeroing_mode)
        .map_err(at(PipelineStep::NegativeIncidence))?;

    let mut scores = Vec::with_capacity(input.area_count());
    for (area, (&gp, &gn)) in input.areas.iter().zip(pos.degrees.iter().zip(&neg.degrees)) {
        let s = superiority_degree(gp, gn).map_err(|e| match e {
            Error::Degenerate { step, detail } => Error::Degenerate {
                step,
                detail: format!("area `{}`: {detail}", area.name),
            },
            other => at(PipelineStep::Superiority)(other),
        })?;
        scores.push((area.name.clone(), s));
    }

    let mut areas: Vec<Option<AreaOutcome>> = vec![None; scores.len()];
    for r in rank_areas(&scores) {
        let idx = r.position;
        areas[idx] = Some(AreaOutcome {
            name: r.name,
            gamma_pos: pos.degrees[idx],
            gamma_neg: neg.degrees[idx],
            superiority: r.superiority,
            rank: r.rank,
            tied: r.tied,
            level: classify(r.superiority).map_err(at(PipelineStep::Classification))?,
        });
    }
    let areas = areas.into_iter().map(|a| a.expect("every area ranked")).collect();

    let trace = config.emit_trace.then(|| StageMatrices {
        standardized,
        weighted,
        positive_ideal: c_pos,
        negative_ideal: c_neg,
        area_volumes: pos.factor_volumes.clone(),
        positive_volume: pos.reference_volume.clone(),
        negative_volume: neg.reference_volume.clone(),
        volume_diff_pos: pos.differences.clone(),
        volume_diff_neg: neg.differences.clone(),
        coeff_pos: pos.coefficients.clone(),
        coeff_neg: neg.coefficients.clone(),
        d_max_pos: pos.d_max,
        d_min_pos: pos.d_min,
        d_max_neg: neg.d_max,
        d_min_neg: neg.d_min,
    });

    Ok(AssessmentResult {
        index_ids: input.indices.iter().map(|i| i.id.clone()).collect(),
        periods: input.periods.clone(),
        areas,
        config: ConfigEcho {
            config: *config,
            index_weight_sum,
            time_weight_sum,
            weights_renormalized: config.renormalize_weights,
        },
        trace,
    })
}

/// [`assess`] plus fingerprint, version and timing.
pub fn run_assessment(input: &AssessmentInput, config: &RunConfig) -> Result<AssessmentReport> {
    let start = Instant::now();
    let result = assess(input, config)?;
    Ok(AssessmentReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        fingerprint: io::fingerprint(input),
        duration_seconds: start.elapsed().as_secs_f64(),
        result,
    })
}

/// The bundled wildland-urban interface case: three areas, fifteen indices,
/// six periods.
pub fn demo_input() -> AssessmentInput {
    io::parse_json(io::WUI_CASE_JSON, "wui-case.json").expect("bundled dataset is valid")
}

pub fn demo() -> AssessmentReport {
    demo_with(&RunConfig::default())
}

pub fn demo_with(config: &RunConfig) -> AssessmentReport {
    run_assessment(&demo_input(), config).expect("bundled dataset assesses cleanly")
}

pub fn level_of(report: &AssessmentReport, area: &str) -> Option<RiskLevel> {
    report.result.areas.iter().find(|a| a.name == area).map(|a| a.level)
}

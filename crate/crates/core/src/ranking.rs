// SPDX-License-Identifier: Apache-2.0

//! Superiority degrees, ranking, and the seven-grade risk scale.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, PipelineStep, Result};

/// Upper thresholds of the seven risk grades, in increasing order.
pub const COMMENT_SET: [f64; 7] = [0.1, 0.2, 0.4, 0.6, 0.7, 0.8, 0.9];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RiskLevel {
    ExtremelyLow,
    Low,
    SlightlyLow,
    Medium,
    SlightlyHigh,
    High,
    ExtremelyHigh,
}

impl RiskLevel {
    pub const ALL: [RiskLevel; 7] = [
        RiskLevel::ExtremelyLow,
        RiskLevel::Low,
        RiskLevel::SlightlyLow,
        RiskLevel::Medium,
        RiskLevel::SlightlyHigh,
        RiskLevel::High,
        RiskLevel::ExtremelyHigh,
    ];

    /// Upper bound of this grade on the superiority scale.
    pub fn threshold(self) -> f64 {
        COMMENT_SET[self as usize]
    }

    pub fn label(self) -> &'static str {
        match self {
            RiskLevel::ExtremelyLow => "extremely low",
            RiskLevel::Low => "low",
            RiskLevel::SlightlyLow => "slightly low",
            RiskLevel::Medium => "medium",
            RiskLevel::SlightlyHigh => "slightly high",
            RiskLevel::High => "high",
            RiskLevel::ExtremelyHigh => "extremely high",
        }
    }
}

impl fmt::Display for RiskLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn check_unit(value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange { value })
    }
}

/// Closed-form minimizer of [`objective_h`] for one area:
/// `s = g⁺² / (g⁺² + g⁻²)`.
pub fn superiority_degree(gamma_pos: f64, gamma_neg: f64) -> Result<f64> {
    check_unit(gamma_pos)?;
    check_unit(gamma_neg)?;
    let p = gamma_pos * gamma_pos;
    let n = gamma_neg * gamma_neg;
    if p + n == 0.0 {
        return Err(Error::Degenerate {
            step: PipelineStep::Superiority,
            detail: "both incidence degrees are zero".into(),
        });
    }
    Ok(p / (p + n))
}

/// `H(s) = Σ [(1 - s_i) g⁺_i]² + (s_i g⁻_i)²`.
pub fn objective_h(s: &[f64], gammas_pos: &[f64], gammas_neg: &[f64]) -> Result<f64> {
    if s.len() != gammas_pos.len() || s.len() != gammas_neg.len() {
        return Err(Error::Shape {
            expected: format!("{} superiority degrees and incidence pairs", s.len()),
            found: format!("{} positive, {} negative", gammas_pos.len(), gammas_neg.len()),
        });
    }
    Ok(s.iter()
        .zip(gammas_pos)
        .zip(gammas_neg)
        .map(|((&s, &gp), &gn)| ((1.0 - s) * gp).powi(2) + (s * gn).powi(2))
        .sum())
}

/// Maps a superiority degree to the lowest grade whose threshold is not
/// below it. A value strictly between two thresholds takes the higher grade.
pub fn classify(s: f64) -> Result<RiskLevel> {
    check_unit(s)?;
    Ok(RiskLevel::ALL
        .into_iter()
        .find(|level| s <= level.threshold())
        .unwrap_or(RiskLevel::ExtremelyHigh))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedArea {
    /// Index of this area in the input slice.
    pub position: usize,
    pub name: String,
    pub superiority: f64,
    /// 1 is the highest risk. Tied areas share the smaller rank.
    pub rank: usize,
    pub tied: bool,
}

/// Orders areas by descending superiority. Ties keep their input order.
pub fn rank_areas(scores: &[(String, f64)]) -> Vec<RankedArea> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].1.total_cmp(&scores[a].1));

    let mut ranked: Vec<RankedArea> = Vec::with_capacity(scores.len());
    for (pos, &idx) in order.iter().enumerate() {
        let (name, s) = &scores[idx];
        let rank = match ranked.last() {
            Some(prev) if prev.superiority == *s => prev.rank,
            _ => pos + 1,
        };
        ranked.push(RankedArea {
            position: idx,
            name: name.clone(),
            superiority: *s,
            rank,
            tied: false,
        });
    }
    for i in 0..ranked.len() {
        let tied = ranked.iter().enumerate().any(|(k, r)| k != i && r.rank == ranked[i].rank);
        ranked[i].tied = tied;
    }
    ranked
}

// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::path::PathBuf;

use serde::Serialize;

use crate::model::ValidationIssue;

/// Stage of the assessment pipeline, used to locate degenerate failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelineStep {
    Validation,
    Standardization,
    Weighting,
    IdealMatrices,
    PositiveIncidence,
    NegativeIncidence,
    Superiority,
    Ranking,
    Classification,
}

impl fmt::Display for PipelineStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PipelineStep::Validation => "validation",
            PipelineStep::Standardization => "standardization",
            PipelineStep::Weighting => "weighting",
            PipelineStep::IdealMatrices => "ideal matrices",
            PipelineStep::PositiveIncidence => "incidence against positive ideal",
            PipelineStep::NegativeIncidence => "incidence against negative ideal",
            PipelineStep::Superiority => "superiority degree",
            PipelineStep::Ranking => "ranking",
            PipelineStep::Classification => "classification",
        };
        f.write_str(s)
    }
}

/// Every violation found by [`crate::validate_input`], not just the first.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationErrors(pub Vec<ValidationIssue>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} validation error(s)", self.0.len())?;
        for issue in &self.0 {
            write!(f, "\n  - {issue}")?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Validation(ValidationErrors),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error in {locus}: {message}")]
    Parse { locus: String, message: String },

    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: String, found: String },

    #[error("{what} must not be empty")]
    Empty { what: &'static str },

    #[error("degenerate computation at {step}: {detail}")]
    Degenerate { step: PipelineStep, detail: String },

    #[error("{step} failed: {source}")]
    Stage {
        step: PipelineStep,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("value {value} outside [0, 1]")]
    OutOfRange { value: f64 },
}

impl Error {
    pub(crate) fn shape(expected: (usize, usize), found: (usize, usize)) -> Self {
        Error::Shape {
            expected: format!("{}x{}", expected.0, expected.1),
            found: format!("{}x{}", found.0, found.1),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

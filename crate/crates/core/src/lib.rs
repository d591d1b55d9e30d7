// SPDX-License-Identifier: Apache-2.0

//! Dynamic multi-criteria risk ranking.
//!
//! Each assessed area is described by a matrix of raw scores, one row per
//! evaluation index and one column per period. The matrices are standardized
//! by index orientation, weighted by index and time weights, and compared
//! against the elementwise best and worst profiles (the positive and negative
//! ideal matrices) using volumetric grey incidence. The two incidence degrees
//! of an area combine into a superiority degree that ranks the areas and maps
//! onto a seven-grade risk scale.
//!
//! ```
//! let report = greyrank_core::demo();
//! let order: Vec<_> = report.result.ranked().iter().map(|a| a.name.as_str()).collect();
//! assert_eq!(order, ["area3", "area2", "area1"]);
//! ```

pub mod error;
pub mod incidence;
pub mod io;
mod matrix_serde;
pub mod model;
pub mod normalize;
pub mod pipeline;
pub mod ranking;
pub mod weighting;

pub use error::{Error, PipelineStep, Result, ValidationErrors};
pub use incidence::{
    grey_coefficients, incidence_family, local_volume, volume_difference, zeroing_image, GreyCoefficients,
    IncidenceFamilyResult, ZeroingMode,
};
pub use io::{emit_report, load_input, render_report, write_trace, InputFormat};
pub use model::{
    default_wui_schema, validate_input, AreaSeries, AssessmentInput, IndexDefinition, IndexOrientation, Matrix,
    ValidationIssue,
};
pub use normalize::{compute_extrema, standardize_all, IndexExtrema};
pub use pipeline::{
    assess, demo, demo_input, demo_with, run_assessment, AreaOutcome, AssessmentReport, AssessmentResult,
    ConfigEcho, OutputFormat, RunConfig, StageMatrices,
};
pub use ranking::{classify, objective_h, rank_areas, superiority_degree, RankedArea, RiskLevel, COMMENT_SET};
pub use weighting::{apply_weights, negative_ideal, positive_ideal};

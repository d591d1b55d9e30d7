// SPDX-License-Identifier: Apache-2.0

//! Dataset files, reports and trace dumps.
//!
//! Two dataset layouts are understood. The json layout is
//!
//! ```text
//! {
//!   "description": "optional note",
//!   "indices": [{"id": "..", "name": "..", "orientation": "benefit", "weight": 0.2}, ..],
//!   "periods": [{"label": "t1", "weight": 0.5}, ..],
//!   "areas":   [{"name": "..", "values": [[..T reals..], ..m rows..]}, ..]
//! }
//! ```
//!
//! where `orientation` is `"benefit"`, `"cost"`, `"intermediate"` or
//! `{"interval": [low, high]}`. The csv bundle is a directory holding
//! `indices.csv` (`id,name,orientation,low,high,weight`), `periods.csv`
//! (`label,weight`) and an `areas/` directory with one `<area name>.csv` per
//! area (header `index,<period labels>`, one row per index id). Areas are
//! taken in file-name order.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result, ValidationErrors};
use crate::matrix_serde;
use crate::model::{AreaSeries, AssessmentInput, IndexDefinition, IndexOrientation, Matrix, ValidationIssue};
use crate::pipeline::{AssessmentReport, OutputFormat, RunConfig};

/// The bundled wildland-urban interface case study.
pub const WUI_CASE_JSON: &str = include_str!("../data/wui-case.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodEntry {
    pub label: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AreaEntry {
    pub name: String,
    pub values: Vec<Vec<f64>>,
}

/// On-disk json form of an [`AssessmentInput`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub indices: Vec<IndexDefinition>,
    pub periods: Vec<PeriodEntry>,
    pub areas: Vec<AreaEntry>,
}

impl From<&AssessmentInput> for DatasetFile {
    fn from(input: &AssessmentInput) -> Self {
        DatasetFile {
            description: input.description.clone(),
            indices: input.indices.clone(),
            periods: input
                .periods
                .iter()
                .zip(&input.time_weights)
                .map(|(label, &weight)| PeriodEntry {
                    label: label.clone(),
                    weight,
                })
                .collect(),
            areas: input
                .areas
                .iter()
                .map(|a| AreaEntry {
                    name: a.name.clone(),
                    values: matrix_serde::to_rows(&a.values),
                })
                .collect(),
        }
    }
}

impl DatasetFile {
    /// Converts and validates, reporting ragged rows alongside every other
    /// violation.
    pub fn into_input(self) -> Result<AssessmentInput> {
        let periods = self.periods.len();
        let mut issues = Vec::new();
        let mut areas = Vec::with_capacity(self.areas.len());
        for area in self.areas {
            for (row, values) in area.values.iter().enumerate() {
                if values.len() != periods {
                    issues.push(ValidationIssue::RaggedRows {
                        area: area.name.clone(),
                        row: row + 1,
                        expected: periods,
                        found: values.len(),
                    });
                }
            }
            let values = matrix_serde::from_rows(&area.values).unwrap_or_else(|| Matrix::zeros(area.values.len(), periods));
            areas.push(AreaSeries::new(area.name, values));
        }
        let input = AssessmentInput {
            description: self.description,
            indices: self.indices,
            periods: self.periods.iter().map(|p| p.label.clone()).collect(),
            time_weights: self.periods.iter().map(|p| p.weight).collect(),
            areas,
        };
        finish(input, issues)
    }
}

fn finish(input: AssessmentInput, mut issues: Vec<ValidationIssue>) -> Result<AssessmentInput> {
    let ragged: Vec<&str> = issues
        .iter()
        .filter_map(|i| match i {
            ValidationIssue::RaggedRows { area, .. } => Some(area.as_str()),
            _ => None,
        })
        .collect();
    let unbounded: Vec<&str> = issues
        .iter()
        .filter_map(|i| match i {
            ValidationIssue::MissingIntervalBounds(id) => Some(id.as_str()),
            _ => None,
        })
        .collect();
    // ragged areas were padded and missing bounds filled with NaN; both are
    // already reported
    let rest: Vec<ValidationIssue> = input
        .issues()
        .into_iter()
        .filter(|i| match i {
            ValidationIssue::AreaShape { area, .. } => !ragged.contains(&area.as_str()),
            ValidationIssue::IntervalBounds { id, .. } => !unbounded.contains(&id.as_str()),
            _ => true,
        })
        .collect();
    issues.extend(rest);
    if issues.is_empty() {
        Ok(input)
    } else {
        Err(Error::Validation(ValidationErrors(issues)))
    }
}

/// Parses and validates a json dataset. `source` names the text in errors.
pub fn parse_json(text: &str, source: &str) -> Result<AssessmentInput> {
    let file: DatasetFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        locus: format!("{source}:{}:{}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    file.into_input()
}

pub fn to_json(input: &AssessmentInput) -> String {
    serde_json::to_string_pretty(&DatasetFile::from(input)).expect("dataset serializes")
}

/// `sha256:<hex>` over the compact json form of the input.
pub fn fingerprint(input: &AssessmentInput) -> String {
    let bytes = serde_json::to_vec(&DatasetFile::from(input)).expect("dataset serializes");
    format!("sha256:{:x}", Sha256::digest(&bytes))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Json,
    CsvBundle,
}

impl InputFormat {
    /// Directories are csv bundles, anything else json.
    pub fn detect(path: &Path) -> Self {
        if path.is_dir() {
            InputFormat::CsvBundle
        } else {
            InputFormat::Json
        }
    }
}

pub fn load_input(path: &Path, format: InputFormat) -> Result<AssessmentInput> {
    match format {
        InputFormat::Json => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            parse_json(&text, &path.display().to_string())
        }
        InputFormat::CsvBundle => load_csv_bundle(path),
    }
}

pub fn write_json(input: &AssessmentInput, path: &Path) -> Result<()> {
    fs::write(path, to_json(input) + "\n").map_err(|e| Error::io(path, e))
}

#[derive(Debug, Deserialize)]
struct IndexRow {
    id: String,
    name: String,
    orientation: String,
    low: Option<f64>,
    high: Option<f64>,
    weight: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct PeriodRow {
    label: String,
    weight: f64,
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map(|p| format!(":{}", p.line())).unwrap_or_default();
    Error::Parse {
        locus: format!("{}{line}", path.display()),
        message: e.to_string(),
    }
}

fn open_csv(path: &Path) -> Result<csv::Reader<fs::File>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file))
}

pub fn load_csv_bundle(dir: &Path) -> Result<AssessmentInput> {
    let mut issues = Vec::new();

    let indices_path = dir.join("indices.csv");
    let mut indices = Vec::new();
    let mut reader = open_csv(&indices_path)?;
    for (k, row) in reader.deserialize::<IndexRow>().enumerate() {
        let row = row.map_err(|e| csv_error(&indices_path, e))?;
        let orientation = match row.orientation.to_ascii_lowercase().as_str() {
            "benefit" => IndexOrientation::Benefit,
            "cost" => IndexOrientation::Cost,
            "intermediate" => IndexOrientation::Intermediate,
            "interval" => match (row.low, row.high) {
                (Some(low), Some(high)) => IndexOrientation::Interval { low, high },
                _ => {
                    issues.push(ValidationIssue::MissingIntervalBounds(row.id.clone()));
                    IndexOrientation::Interval {
                        low: f64::NAN,
                        high: f64::NAN,
                    }
                }
            },
            other => {
                return Err(Error::Parse {
                    locus: format!("{}:{}", indices_path.display(), k + 2),
                    message: format!(
                        "unknown orientation `{other}`, expected one of benefit, cost, intermediate, interval"
                    ),
                })
            }
        };
        if !matches!(orientation, IndexOrientation::Interval { .. }) && (row.low.is_some() || row.high.is_some()) {
            issues.push(ValidationIssue::UnexpectedIntervalBounds(row.id.clone()));
        }
        indices.push(IndexDefinition::new(row.id, row.name, orientation, row.weight));
    }

    let periods_path = dir.join("periods.csv");
    let mut periods = Vec::new();
    let mut reader = open_csv(&periods_path)?;
    for row in reader.deserialize::<PeriodRow>() {
        periods.push(row.map_err(|e| csv_error(&periods_path, e))?);
    }
    let labels: Vec<String> = periods.iter().map(|p| p.label.clone()).collect();

    let areas_dir = dir.join("areas");
    let mut files: Vec<PathBuf> = fs::read_dir(&areas_dir)
        .map_err(|e| Error::io(&areas_dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .collect();
    files.sort();

    let mut areas = Vec::with_capacity(files.len());
    for path in files {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        areas.push(read_area_csv(&path, name, &indices, &labels)?);
    }

    let input = AssessmentInput {
        description: None,
        indices,
        periods: labels,
        time_weights: periods.iter().map(|p| p.weight).collect(),
        areas,
    };
    finish(input, issues)
}

fn read_area_csv(path: &Path, name: String, indices: &[IndexDefinition], labels: &[String]) -> Result<AreaSeries> {
    let parse = |line: u64, message: String| Error::Parse {
        locus: format!("{}:{line}", path.display()),
        message,
    };
    let mut reader = open_csv(path)?;
    let header = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    let found: Vec<&str> = header.iter().skip(1).collect();
    if found.len() != labels.len() {
        return Err(parse(
            1,
            format!("area `{name}` has {} period columns, expected T = {}", found.len(), labels.len()),
        ));
    }
    if let Some((f, l)) = found.iter().zip(labels).find(|(f, l)| **f != l.as_str()) {
        return Err(parse(1, format!("area `{name}`: period column `{f}` where `{l}` was expected")));
    }

    let mut values = Matrix::from_element(indices.len(), labels.len(), f64::NAN);
    let mut filled = vec![false; indices.len()];
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        let id = record.get(0).unwrap_or_default();
        let j = indices
            .iter()
            .position(|i| i.id == id)
            .ok_or_else(|| parse(line, format!("area `{name}`: unknown index id `{id}`")))?;
        if std::mem::replace(&mut filled[j], true) {
            return Err(parse(line, format!("area `{name}`: index `{id}` listed twice")));
        }
        for (t, cell) in record.iter().skip(1).enumerate() {
            values[(j, t)] = cell
                .parse()
                .map_err(|_| parse(line, format!("area `{name}`: `{cell}` is not a number")))?;
        }
    }
    if let Some(j) = filled.iter().position(|f| !f) {
        return Err(parse(0, format!("area `{name}`: no row for index `{}`", indices[j].id)));
    }
    Ok(AreaSeries::new(name, values))
}

fn safe_file_stem(name: &str) -> bool {
    !name.is_empty() && !name.starts_with('.') && !name.contains(['/', '\\', '\0'])
}

/// Writes `input` as a csv bundle under `dir`. The description is not kept.
pub fn write_csv_bundle(input: &AssessmentInput, dir: &Path) -> Result<()> {
    let areas_dir = dir.join("areas");
    fs::create_dir_all(&areas_dir).map_err(|e| Error::io(&areas_dir, e))?;

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "name", "orientation", "low", "high", "weight"])
        .expect("in-memory write");
    for index in &input.indices {
        let (kind, low, high) = match index.orientation {
            IndexOrientation::Interval { low, high } => ("interval", low.to_string(), high.to_string()),
            other => (
                match other {
                    IndexOrientation::Benefit => "benefit",
                    IndexOrientation::Cost => "cost",
                    _ => "intermediate",
                },
                String::new(),
                String::new(),
            ),
        };
        w.write_record([&index.id, &index.name, kind, &low, &high, &index.weight.to_string()])
            .expect("in-memory write");
    }
    write_bytes(&dir.join("indices.csv"), w.into_inner().expect("flush"))?;

    let mut w = csv::Writer::from_writer(Vec::new());
    for (label, weight) in input.periods.iter().zip(&input.time_weights) {
        w.serialize(PeriodRow {
            label: label.clone(),
            weight: *weight,
        })
        .expect("in-memory write");
    }
    write_bytes(&dir.join("periods.csv"), w.into_inner().expect("flush"))?;

    let row_labels: Vec<String> = input.indices.iter().map(|i| i.id.clone()).collect();
    for area in &input.areas {
        if !safe_file_stem(&area.name) {
            return Err(Error::Config(format!("area name `{}` cannot be used as a file name", area.name)));
        }
        let path = areas_dir.join(format!("{}.csv", area.name));
        write_labeled_matrix(&path, "index", &row_labels, &input.periods, &area.values)?;
    }
    Ok(())
}

fn write_bytes(path: &Path, bytes: Vec<u8>) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn write_labeled_matrix(path: &Path, corner: &str, rows: &[String], cols: &[String], m: &Matrix) -> Result<()> {
    debug_assert_eq!((rows.len(), cols.len()), m.shape());
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = std::iter::once(corner.to_string()).chain(cols.iter().cloned());
    w.write_record(header).expect("in-memory write");
    for (j, label) in rows.iter().enumerate() {
        let row = m.row(j);
        let record = std::iter::once(label.clone()).chain(row.iter().map(|v| v.to_string()));
        w.write_record(record).expect("in-memory write");
    }
    write_bytes(path, w.into_inner().expect("flush"))
}

fn round_to(v: f64, decimals: u8) -> String {
    format!("{v:.prec$}", prec = decimals as usize)
}

/// Renders a report in the requested format.
pub fn render_report(report: &AssessmentReport, format: OutputFormat, decimals: u8) -> String {
    let result = &report.result;
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["rank", "tied", "name", "gamma_pos", "gamma_neg", "superiority", "level"])
                .expect("in-memory write");
            for a in result.ranked() {
                w.write_record([
                    a.rank.to_string(),
                    a.tied.to_string(),
                    a.name.clone(),
                    a.gamma_pos.to_string(),
                    a.gamma_neg.to_string(),
                    a.superiority.to_string(),
                    a.level.label().to_string(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        OutputFormat::Text => {
            let echo = &result.config;
            let mut out = String::new();
            let _ = writeln!(out, "greyrank {}: dynamic risk assessment", report.tool_version);
            let _ = writeln!(
                out,
                "areas {}, indices {}, periods {}, zeroing {}",
                result.areas.len(),
                result.index_ids.len(),
                result.periods.len(),
                echo.config.zeroing_mode
            );
            let _ = writeln!(
                out,
                "index weights sum {:.4}, time weights sum {:.4}{}",
                echo.index_weight_sum,
                echo.time_weight_sum,
                if echo.weights_renormalized { ", renormalized to 1" } else { "" }
            );
            let _ = writeln!(out, "input {}\n", report.fingerprint);

            let name_w = result.areas.iter().map(|a| a.name.chars().count()).max().unwrap_or(4).max(4);
            let num_w = (decimals as usize + 2).max(6);
            let _ = writeln!(
                out,
                "{:<5} {:<name_w$} {:>num_w$} {:>num_w$} {:>num_w$}  level",
                "rank", "area", "gamma+", "gamma-", "s"
            );
            for a in result.ranked() {
                let rank = format!("{}{}", a.rank, if a.tied { "=" } else { "" });
                let _ = writeln!(
                    out,
                    "{:<5} {:<name_w$} {:>num_w$} {:>num_w$} {:>num_w$}  {}",
                    rank,
                    a.name,
                    round_to(a.gamma_pos, decimals),
                    round_to(a.gamma_neg, decimals),
                    round_to(a.superiority, decimals),
                    a.level
                );
            }
            out
        }
    }
}

/// Writes the report to `destination`, or standard output when `None`.
pub fn emit_report(report: &AssessmentReport, config: &RunConfig, destination: Option<&Path>) -> Result<()> {
    let text = render_report(report, config.output_format, config.report_decimals);
    match destination {
        Some(path) => fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn slug(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

fn window_labels(labels: &[String]) -> Vec<String> {
    labels.windows(2).map(|w| format!("{}/{}", w[0], w[1])).collect()
}

/// Dumps the retained stage matrices as labelled csv files under `dir`:
/// four shared files (both ideal matrices and their local volumes) and six
/// per area (standardized, weighted, both volume differences, both
/// coefficient matrices). Returns the written paths.
pub fn write_trace(report: &AssessmentReport, dir: &Path) -> Result<Vec<PathBuf>> {
    let result = &report.result;
    let trace = result
        .trace
        .as_ref()
        .ok_or_else(|| Error::Config("report carries no trace; run with emit_trace enabled".into()))?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;

    let rows = &result.index_ids;
    let cols = &result.periods;
    let wrows = window_labels(rows);
    let wcols = window_labels(cols);

    let mut written = Vec::new();
    let mut put = |file: String, full: bool, m: &Matrix| -> Result<()> {
        let path = dir.join(file);
        if full {
            write_labeled_matrix(&path, "index", rows, cols, m)?;
        } else {
            write_labeled_matrix(&path, "window", &wrows, &wcols, m)?;
        }
        written.push(path);
        Ok(())
    };

    put("positive_ideal.csv".into(), true, &trace.positive_ideal)?;
    put("negative_ideal.csv".into(), true, &trace.negative_ideal)?;
    put("positive_ideal_volume.csv".into(), false, &trace.positive_volume)?;
    put("negative_ideal_volume.csv".into(), false, &trace.negative_volume)?;
    for (k, area) in result.areas.iter().enumerate() {
        let stem = format!("area{:02}_{}", k + 1, slug(&area.name));
        put(format!("{stem}_standardized.csv"), true, &trace.standardized[k])?;
        put(format!("{stem}_weighted.csv"), true, &trace.weighted[k])?;
        put(format!("{stem}_volume_diff_pos.csv"), false, &trace.volume_diff_pos[k])?;
        put(format!("{stem}_volume_diff_neg.csv"), false, &trace.volume_diff_neg[k])?;
        put(format!("{stem}_coeff_pos.csv"), false, &trace.coeff_pos[k])?;
        put(format!("{stem}_coeff_neg.csv"), false, &trace.coeff_neg[k])?;
    }
    Ok(written)
}

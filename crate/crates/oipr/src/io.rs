// SPDX-License-Identifier: MIT OR Apache-2.0

//! Label-file ingestion, evaluation reports, and curve export.
//!
//! Two label formats are supported: CSV (header `label`, or
//! `timestamp,label` with the timestamp preserved on round-trips) and JSON
//! (`{"labels": [0, 1, ...]}`). Reports serialize to stable-key JSON or a
//! compact text table with three-decimal scores.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{OiprError, Result};
use crate::interest::{InterestCurve, OiprParams};
use crate::labels::LabelSeries;
use crate::metrics::{EvalConfig, Evaluation};

/// On-disk label encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelFormat {
    /// `label` or `timestamp,label` columns, one row per time point.
    Csv,
    /// `{"labels": [0, 1, ...]}`.
    Json,
}

impl LabelFormat {
    /// Guesses the format from a file extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()? {
            "csv" => Some(Self::Csv),
            "json" => Some(Self::Json),
            _ => None,
        }
    }
}

/// A parsed label file, keeping enough context to write it back losslessly.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelFile {
    /// Encoding the file was read in (and will be written in).
    pub format: LabelFormat,
    /// The validated label sequence.
    pub series: LabelSeries,
    /// Timestamp column of a two-column CSV, if present.
    pub timestamps: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct LabelsDoc {
    labels: Vec<u8>,
}

impl LabelFile {
    /// Reads and validates a label file.
    pub fn read(path: &Path, format: LabelFormat) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| OiprError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        match format {
            LabelFormat::Csv => Self::parse_csv(path, &text),
            LabelFormat::Json => Self::parse_json(path, &text),
        }
    }

    /// Writes the file back in its own format.
    pub fn write(&self, path: &Path) -> Result<()> {
        let bytes = match self.format {
            LabelFormat::Csv => self.render_csv(path)?,
            LabelFormat::Json => {
                let doc = LabelsDoc {
                    labels: self.series.values().to_vec(),
                };
                let mut bytes = serde_json::to_vec(&doc)?;
                bytes.push(b'\n');
                bytes
            }
        };
        fs::write(path, bytes).map_err(|source| OiprError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    fn parse_csv(path: &Path, text: &str) -> Result<Self> {
        let parse_err = |message: String| OiprError::Parse {
            path: path.to_path_buf(),
            message,
        };
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut records = reader.records();

        let header = records
            .next()
            .ok_or_else(|| parse_err("empty file".to_owned()))?
            .map_err(|e| parse_err(e.to_string()))?;
        let header_fields: Vec<&str> = header.iter().collect();
        let has_timestamps = match header_fields.as_slice() {
            ["label"] => false,
            ["timestamp", "label"] => true,
            other => {
                return Err(parse_err(format!(
                    "malformed header {other:?}: expected 'label' or 'timestamp,label'"
                )))
            }
        };

        let mut values = Vec::new();
        let mut timestamps = has_timestamps.then(Vec::new);
        for (row, record) in records.enumerate() {
            let row = row + 1; // 1-based data rows, header excluded
            let record = record.map_err(|e| parse_err(format!("row {row}: {e}")))?;
            let expected_fields = if has_timestamps { 2 } else { 1 };
            if record.len() != expected_fields {
                return Err(parse_err(format!(
                    "row {row}: expected {expected_fields} fields, got {}",
                    record.len()
                )));
            }
            if let Some(timestamps) = timestamps.as_mut() {
                timestamps.push(record[0].to_owned());
            }
            let cell = &record[record.len() - 1];
            let value = match cell {
                "0" => 0,
                "1" => 1,
                other => {
                    return Err(parse_err(format!(
                        "row {row}, column 'label': expected 0 or 1, got '{other}'"
                    )))
                }
            };
            values.push(value);
        }
        if values.is_empty() {
            return Err(parse_err("file contains no label rows".to_owned()));
        }
        let series = LabelSeries::new(values).expect("cells validated above");
        Ok(Self {
            format: LabelFormat::Csv,
            series,
            timestamps,
        })
    }

    fn parse_json(path: &Path, text: &str) -> Result<Self> {
        let parse_err = |message: String| OiprError::Parse {
            path: path.to_path_buf(),
            message,
        };
        let doc: LabelsDoc =
            serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        let series = LabelSeries::new(doc.labels).map_err(|e| match e {
            OiprError::InvalidLabel { index, value } => {
                parse_err(format!("labels[{index}]: expected 0 or 1, got {value}"))
            }
            OiprError::EmptySeries => parse_err("labels array is empty".to_owned()),
            other => other,
        })?;
        Ok(Self {
            format: LabelFormat::Json,
            series,
            timestamps: None,
        })
    }

    fn render_csv(&self, path: &Path) -> Result<Vec<u8>> {
        if let Some(timestamps) = &self.timestamps {
            if timestamps.len() != self.series.len() {
                return Err(OiprError::LengthMismatch {
                    left: timestamps.len(),
                    right: self.series.len(),
                });
            }
        }
        let mut writer = csv::Writer::from_writer(Vec::new());
        let io_err = |e: csv::Error| OiprError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        };
        match &self.timestamps {
            Some(timestamps) => {
                writer.write_record(["timestamp", "label"]).map_err(io_err)?;
                for (ts, value) in timestamps.iter().zip(self.series.values()) {
                    writer
                        .write_record([ts.as_str(), if *value == 1 { "1" } else { "0" }])
                        .map_err(io_err)?;
                }
            }
            None => {
                writer.write_record(["label"]).map_err(io_err)?;
                for value in self.series.values() {
                    writer
                        .write_record([if *value == 1 { "1" } else { "0" }])
                        .map_err(io_err)?;
                }
            }
        }
        writer
            .into_inner()
            .map_err(|e| OiprError::Parse {
                path: path.to_path_buf(),
                message: e.to_string(),
            })
    }
}

/// Reads a label file and returns just the series.
pub fn read_labels(path: &Path, format: LabelFormat) -> Result<LabelSeries> {
    Ok(LabelFile::read(path, format)?.series)
}

/// Writes a bare label series (no timestamp column).
pub fn write_labels(path: &Path, series: &LabelSeries, format: LabelFormat) -> Result<()> {
    LabelFile {
        format,
        series: series.clone(),
        timestamps: None,
    }
    .write(path)
}

/// Basic shape of the evaluated inputs, echoed into reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    /// Length of both series.
    pub n_points: usize,
    /// Number of ground-truth events.
    pub gt_events: usize,
    /// Number of predicted events.
    pub pred_events: usize,
}

/// Effective configuration echoed into reports, with derived defaults
/// resolved so a report alone suffices to reproduce its scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    /// Curve parameters in effect; absent only when the ground truth has no
    /// events and none were supplied.
    pub params: Option<OiprParams>,
    /// Point-adjustment threshold in effect.
    pub k_percent: f64,
}

/// A full evaluation run: input digest, effective config, and one entry per
/// evaluator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    /// Shape of the evaluated input pair.
    pub input: InputDigest,
    /// Effective configuration.
    pub config: ConfigEcho,
    /// Per-evaluator results, in the order they were run.
    pub evaluations: Vec<Evaluation>,
}

/// Report output encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// Pretty-printed JSON, full precision.
    Json,
    /// Text table, three-decimal scores.
    Table,
}

impl EvalReport {
    /// Assembles a report around finished evaluations.
    pub fn new(
        gt: &LabelSeries,
        pred: &LabelSeries,
        config: &EvalConfig,
        evaluations: Vec<Evaluation>,
    ) -> Self {
        let params = config
            .params
            .or_else(|| OiprParams::derived_from(gt).ok());
        Self {
            input: InputDigest {
                n_points: gt.len(),
                gt_events: gt.events().len(),
                pred_events: pred.events().len(),
            },
            config: ConfigEcho {
                params,
                k_percent: config.k_percent,
            },
            evaluations,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    /// Parses a report back from JSON.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Text table with `precision/recall/f1` per evaluator at 3 decimals.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "n_points: {}  gt_events: {}  pred_events: {}\n",
            self.input.n_points, self.input.gt_events, self.input.pred_events
        ));
        match self.config.params {
            Some(p) => out.push_str(&format!(
                "params: l_dis={} l_obs={} b_dur={}  k_percent={}\n",
                p.l_dis, p.l_obs, p.b_dur, self.config.k_percent
            )),
            None => out.push_str(&format!(
                "params: (none)  k_percent={}\n",
                self.config.k_percent
            )),
        }
        out.push_str("evaluator  precision/recall/f1\n");
        for eval in &self.evaluations {
            let mut notes = Vec::new();
            if eval.flags.precision_denominator_zero {
                notes.push("precision denominator zero".to_owned());
            }
            if eval.flags.recall_denominator_zero {
                notes.push("recall denominator zero".to_owned());
            }
            notes.extend(eval.flags.notices.iter().cloned());
            let suffix = if notes.is_empty() {
                String::new()
            } else {
                format!("  [{}]", notes.join("; "))
            };
            out.push_str(&format!(
                "{:<9}  {:.3}/{:.3}/{:.3}{}\n",
                eval.evaluator, eval.scores.precision, eval.scores.recall, eval.scores.f1, suffix
            ));
        }
        out
    }
}

/// Renders a report in the requested format.
pub fn write_report(report: &EvalReport, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Json => Ok(report.to_json()?.into_bytes()),
        ReportFormat::Table => Ok(report.to_table().into_bytes()),
    }
}

/// Writes an interest curve as CSV with header `index,value`, full double
/// precision.
pub fn write_curve(path: &Path, curve: &InterestCurve) -> Result<()> {
    let mut text = String::from("index,value\n");
    for (index, value) in curve.values().iter().enumerate() {
        text.push_str(&format!("{index},{value}\n"));
    }
    fs::write(path, text).map_err(|source| OiprError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Convenience wrapper: `path` must carry a recognizable extension.
pub fn detect_format(path: &Path) -> Result<LabelFormat> {
    LabelFormat::from_path(path).ok_or_else(|| OiprError::Parse {
        path: path.to_path_buf(),
        message: "cannot infer label format from extension (use .csv or .json)".to_owned(),
    })
}

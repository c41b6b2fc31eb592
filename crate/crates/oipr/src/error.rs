// SPDX-License-Identifier: MIT OR Apache-2.0

//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by label handling, metric computation, data generation,
/// and file IO.
#[derive(Debug, Error)]
pub enum OiprError {
    /// A label value other than 0 or 1 was encountered.
    #[error("invalid label value {value} at index {index}: labels must be 0 or 1")]
    InvalidLabel { index: usize, value: u8 },

    /// A label series must contain at least one point.
    #[error("label series is empty")]
    EmptySeries,

    /// Two series or curves that must align have different lengths.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// The operation needs at least one ground-truth anomaly event.
    #[error("ground truth contains no anomaly events")]
    NoEvents,

    /// A parameter value lies outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested evaluator name is not registered.
    #[error("unknown evaluator `{0}`")]
    UnknownEvaluator(String),

    /// The requested scenario name does not exist.
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    /// Not enough normal positions to place the requested false positives.
    #[error("cannot place {needed} false-positive points: only {available} normal positions available")]
    InsufficientNormalPositions { needed: usize, available: usize },

    /// A result table is missing an entry a computation needs.
    #[error("incomplete result matrix: {0}")]
    MatrixIncomplete(String),

    /// A label or report file failed to parse.
    #[error("parse error in {path}: {message}")]
    Parse { path: PathBuf, message: String },

    /// Underlying filesystem failure.
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Report (de)serialization failure.
    #[error("serialization error: {0}")]
    Serialize(#[from] serde_json::Error),
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, OiprError>;

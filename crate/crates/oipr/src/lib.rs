// SPDX-License-Identifier: MIT OR Apache-2.0

//! Operator-interest precision/recall evaluation for time-series anomaly
//! detection.
//!
//! Binary anomaly labels are transformed into *interest curves* that model
//! how much an operator would care about each time point: full interest
//! while an anomaly is fresh, a decaying plateau as it persists, and a
//! fading observation window after it ends. Precision, recall, and F1 are
//! then computed from areas under these curves rather than from raw point
//! counts, which rewards early detection and tolerates small alignment
//! errors without letting a single detected point claim a whole event.
//!
//! The crate also ships the classical pointwise and point-adjustment
//! evaluators behind the same [`metrics::Evaluator`] trait, a generator for
//! adversarial detectors and benchmark scenarios ([`datagen`]), dataset
//! statistics ([`stats`]), label/report IO ([`io`]), and a scenario-matrix
//! summary of evaluator characteristics ([`characteristics`]).

#![forbid(unsafe_code)]

pub mod characteristics;
pub mod datagen;
pub mod error;
pub mod interest;
pub mod io;
pub mod labels;
pub mod metrics;
pub mod stats;

pub use error::{OiprError, Result};
pub use interest::{build_interest_curve, InterestCurve, OiprParams};
pub use labels::{Event, LabelSeries};
pub use metrics::{evaluate, EvalConfig, Evaluation, Evaluator, EvaluatorRegistry, PrfScores};

// SPDX-License-Identifier: MIT OR Apache-2.0

//! Evaluation strategies for binary anomaly detections.
//!
//! Every scoring method — the three classical point-based baselines and the
//! operator-interest method — implements [`Evaluator`] and is selected by
//! name through an [`EvaluatorRegistry`]. Callers treat strategies
//! interchangeably, and external code can register additional evaluators
//! under fresh names.

mod oipr;
mod pa;
mod pak;
mod pw;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use self::oipr::{oipr_scores, OperatorInterestEvaluator};
pub use self::pa::{pa_scores, PointAdjustEvaluator};
pub use self::pak::{pak_scores, PointAdjustKEvaluator};
pub use self::pw::{pw_scores, PointwiseEvaluator};

use crate::error::{OiprError, Result};
use crate::interest::{InterestCurve, OiprParams};
use crate::labels::LabelSeries;

/// Default qualification threshold (percent) for partial point adjustment.
pub const DEFAULT_K_PERCENT: f64 = 50.0;

/// Precision, recall, and their harmonic mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrfScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl PrfScores {
    /// Combines precision and recall; a zero sum yields `f1 = 0` rather than NaN.
    pub fn from_precision_recall(precision: f64, recall: f64) -> Self {
        let sum = precision + recall;
        let f1 = if sum > 0.0 {
            2.0 * precision * recall / sum
        } else {
            0.0
        };
        Self { precision, recall, f1 }
    }
}

/// Point-level confusion counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfusion {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
}

impl PointConfusion {
    /// Precision/recall over the counts; zero denominators score 0.
    pub fn scores(&self) -> PrfScores {
        let tp = self.true_positives as f64;
        let predicted = (self.true_positives + self.false_positives) as f64;
        let actual = (self.true_positives + self.false_negatives) as f64;
        let precision = if predicted > 0.0 { tp / predicted } else { 0.0 };
        let recall = if actual > 0.0 { tp / actual } else { 0.0 };
        PrfScores::from_precision_recall(precision, recall)
    }

    /// True when the detection contains no positive points.
    pub fn precision_denominator_zero(&self) -> bool {
        self.true_positives + self.false_positives == 0
    }

    /// True when the ground truth contains no positive points.
    pub fn recall_denominator_zero(&self) -> bool {
        self.true_positives + self.false_negatives == 0
    }
}

/// Interest-mass confusion areas between the two curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfusionAreas {
    /// Interest mass shared by ground truth and detection.
    pub tp_oi: f64,
    /// Detection interest mass the ground truth does not cover.
    pub fp_oi: f64,
    /// Ground-truth interest mass the detection does not cover.
    pub fn_oi: f64,
}

impl ConfusionAreas {
    /// Precision/recall over the areas; zero denominators score 0.
    pub fn scores(&self) -> PrfScores {
        let predicted = self.tp_oi + self.fp_oi;
        let actual = self.tp_oi + self.fn_oi;
        let precision = if predicted > 0.0 { self.tp_oi / predicted } else { 0.0 };
        let recall = if actual > 0.0 { self.tp_oi / actual } else { 0.0 };
        PrfScores::from_precision_recall(precision, recall)
    }

    /// True when the detection curve carries no interest mass.
    pub fn precision_denominator_zero(&self) -> bool {
        self.tp_oi + self.fp_oi == 0.0
    }

    /// True when the ground-truth curve carries no interest mass.
    pub fn recall_denominator_zero(&self) -> bool {
        self.tp_oi + self.fn_oi == 0.0
    }
}

/// Area under a sampled curve: the plain sum of its samples (unit spacing).
pub fn auc(curve: &InterestCurve) -> f64 {
    curve.values().iter().sum()
}

/// Element-wise minimum of two equal-length curves: their shared interest mass.
pub fn pointwise_min(a: &InterestCurve, b: &InterestCurve) -> Result<InterestCurve> {
    if a.len() != b.len() {
        return Err(OiprError::LengthMismatch { left: a.len(), right: b.len() });
    }
    let values = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(&x, &y)| x.min(y))
        .collect();
    Ok(InterestCurve::from_values(values))
}

/// Settings passed to every evaluator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    /// Interest-curve parameters; derived from the ground truth when absent.
    pub params: Option<OiprParams>,
    /// Qualification threshold (percent) for partial point adjustment.
    pub k_percent: f64,
    /// Free-form settings for externally registered evaluators.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            params: None,
            k_percent: DEFAULT_K_PERCENT,
            extra: BTreeMap::new(),
        }
    }
}

/// Degenerate-input markers and free-form notes attached to an evaluation.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EvalFlags {
    /// The detection had no positive mass, so precision was reported as 0.
    pub precision_denominator_zero: bool,
    /// The ground truth had no positive mass, so recall was reported as 0.
    pub recall_denominator_zero: bool,
    /// Human-readable notes, e.g. recording parameter overrides.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notices: Vec<String>,
}

/// The outcome of running one evaluator on one (ground truth, detection) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    /// Registry name of the evaluator that produced this entry.
    pub evaluator: String,
    pub scores: PrfScores,
    /// Point-level confusion counts (point-based evaluators only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<PointConfusion>,
    /// Interest-mass confusion areas (operator-interest evaluator only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub areas: Option<ConfusionAreas>,
    /// Curve parameters the evaluator actually used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<OiprParams>,
    /// Qualification threshold the evaluator actually used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_percent: Option<f64>,
    pub flags: EvalFlags,
}

/// A named scoring strategy over a (ground truth, detection) pair.
pub trait Evaluator: Send + Sync {
    /// Registry key, e.g. `"pw"` or `"oipr"`.
    fn name(&self) -> &str;

    /// Scores `pred` against `gt`; the series must have equal length.
    fn evaluate(
        &self,
        gt: &LabelSeries,
        pred: &LabelSeries,
        config: &EvalConfig,
    ) -> Result<Evaluation>;
}

/// Name-indexed set of evaluation strategies.
pub struct EvaluatorRegistry {
    inner: BTreeMap<String, Box<dyn Evaluator>>,
}

impl EvaluatorRegistry {
    /// Registry holding the four built-in evaluators: `pw`, `pa`, `pak`, `oipr`.
    pub fn builtin() -> Self {
        let mut registry = Self::empty();
        registry.register(Box::new(PointwiseEvaluator));
        registry.register(Box::new(PointAdjustEvaluator));
        registry.register(Box::new(PointAdjustKEvaluator));
        registry.register(Box::new(OperatorInterestEvaluator));
        registry
    }

    /// Registry with no evaluators.
    pub fn empty() -> Self {
        Self { inner: BTreeMap::new() }
    }

    /// Adds an evaluator under its own name, returning any previous holder.
    pub fn register(&mut self, evaluator: Box<dyn Evaluator>) -> Option<Box<dyn Evaluator>> {
        self.inner.insert(evaluator.name().to_owned(), evaluator)
    }

    /// Looks up an evaluator by name.
    pub fn get(&self, name: &str) -> Option<&dyn Evaluator> {
        self.inner.get(name).map(Box::as_ref)
    }

    /// Registered names in lexicographic order.
    pub fn names(&self) -> Vec<&str> {
        self.inner.keys().map(String::as_str).collect()
    }

    /// Runs the named evaluator.
    pub fn evaluate(
        &self,
        name: &str,
        gt: &LabelSeries,
        pred: &LabelSeries,
        config: &EvalConfig,
    ) -> Result<Evaluation> {
        let evaluator = self
            .get(name)
            .ok_or_else(|| OiprError::UnknownEvaluator(name.to_owned()))?;
        evaluator.evaluate(gt, pred, config)
    }
}

impl Default for EvaluatorRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

/// Runs one built-in evaluator by name.
pub fn evaluate(
    name: &str,
    gt: &LabelSeries,
    pred: &LabelSeries,
    config: &EvalConfig,
) -> Result<Evaluation> {
    EvaluatorRegistry::builtin().evaluate(name, gt, pred, config)
}

pub(crate) fn check_equal_len(gt: &LabelSeries, pred: &LabelSeries) -> Result<()> {
    if gt.len() != pred.len() {
        return Err(OiprError::LengthMismatch { left: gt.len(), right: pred.len() });
    }
    Ok(())
}

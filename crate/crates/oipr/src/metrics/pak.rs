// SPDX-License-Identifier: MIT OR Apache-2.0

//! Partial point adjustment: only events detected beyond a percentage
//! threshold are expanded.

use super::pa::adjust_events;
use super::pw::{point_evaluation, pw_scores};
use super::{EvalConfig, Evaluation, Evaluator, PointConfusion, PrfScores};
use crate::error::{OiprError, Result};
use crate::labels::LabelSeries;

/// Expands every ground-truth event whose detected share reaches `k_percent`
/// (inclusive), then scores pointwise.
///
/// Events below the threshold keep their raw detected points, so partial hits
/// still count as individual true positives. An event with no detected points
/// is never expanded, whatever the threshold.
pub fn pak_scores(
    gt: &LabelSeries,
    pred: &LabelSeries,
    k_percent: f64,
) -> Result<(PointConfusion, PrfScores)> {
    if !k_percent.is_finite() || !(0.0..=100.0).contains(&k_percent) {
        return Err(OiprError::InvalidParameter(format!(
            "k_percent must lie in [0, 100], got {k_percent}"
        )));
    }
    super::check_equal_len(gt, pred)?;
    // detected / length * 100 >= k, rearranged to avoid dividing.
    let adjusted = adjust_events(gt, pred, |detected, len| {
        detected as f64 * 100.0 >= k_percent * len as f64
    });
    pw_scores(gt, &adjusted)
}

/// Partial point-adjustment evaluator (`pak`).
pub struct PointAdjustKEvaluator;

impl Evaluator for PointAdjustKEvaluator {
    fn name(&self) -> &str {
        "pak"
    }

    fn evaluate(
        &self,
        gt: &LabelSeries,
        pred: &LabelSeries,
        config: &EvalConfig,
    ) -> Result<Evaluation> {
        let (counts, scores) = pak_scores(gt, pred, config.k_percent)?;
        Ok(point_evaluation("pak", counts, scores, Some(config.k_percent)))
    }
}

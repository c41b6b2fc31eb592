// SPDX-License-Identifier: MIT OR Apache-2.0

//! Point adjustment: any touched event counts as fully detected.

use super::pw::{point_evaluation, pw_scores};
use super::{EvalConfig, Evaluation, Evaluator, PointConfusion, PrfScores};
use crate::error::Result;
use crate::labels::LabelSeries;

/// Copies `pred` and fills every ground-truth event the qualifier accepts.
///
/// The qualifier receives `(detected_points, event_length)`. Detected points
/// of non-qualifying events and detections outside any event are left as-is.
pub(super) fn adjust_events(
    gt: &LabelSeries,
    pred: &LabelSeries,
    qualifies: impl Fn(usize, usize) -> bool,
) -> LabelSeries {
    let mut adjusted = pred.values().to_vec();
    for event in gt.events() {
        let detected = pred.values()[event.start..=event.end]
            .iter()
            .filter(|&&v| v == 1)
            .count();
        if detected >= 1 && qualifies(detected, event.len()) {
            for value in &mut adjusted[event.start..=event.end] {
                *value = 1;
            }
        }
    }
    LabelSeries::new(adjusted).expect("adjusted copy of a valid series stays valid")
}

/// Expands every ground-truth event containing at least one detected point to
/// fully detected, then scores pointwise.
pub fn pa_scores(gt: &LabelSeries, pred: &LabelSeries) -> Result<(PointConfusion, PrfScores)> {
    super::check_equal_len(gt, pred)?;
    let adjusted = adjust_events(gt, pred, |_, _| true);
    pw_scores(gt, &adjusted)
}

/// Point-adjustment evaluator (`pa`).
pub struct PointAdjustEvaluator;

impl Evaluator for PointAdjustEvaluator {
    fn name(&self) -> &str {
        "pa"
    }

    fn evaluate(
        &self,
        gt: &LabelSeries,
        pred: &LabelSeries,
        _config: &EvalConfig,
    ) -> Result<Evaluation> {
        let (counts, scores) = pa_scores(gt, pred)?;
        Ok(point_evaluation("pa", counts, scores, None))
    }
}

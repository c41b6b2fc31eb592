// SPDX-License-Identifier: MIT OR Apache-2.0

//! Plain pointwise precision/recall.

use super::{
    check_equal_len, EvalConfig, EvalFlags, Evaluation, Evaluator, PointConfusion, PrfScores,
};
use crate::error::Result;
use crate::labels::LabelSeries;

/// Counts point-level hits between ground truth and detection.
pub fn pw_scores(gt: &LabelSeries, pred: &LabelSeries) -> Result<(PointConfusion, PrfScores)> {
    check_equal_len(gt, pred)?;
    let mut counts = PointConfusion {
        true_positives: 0,
        false_positives: 0,
        false_negatives: 0,
    };
    for (&g, &p) in gt.values().iter().zip(pred.values()) {
        match (g, p) {
            (1, 1) => counts.true_positives += 1,
            (0, 1) => counts.false_positives += 1,
            (1, 0) => counts.false_negatives += 1,
            _ => {}
        }
    }
    let scores = counts.scores();
    Ok((counts, scores))
}

pub(super) fn point_evaluation(
    name: &str,
    counts: PointConfusion,
    scores: PrfScores,
    k_percent: Option<f64>,
) -> Evaluation {
    Evaluation {
        evaluator: name.to_owned(),
        scores,
        counts: Some(counts),
        areas: None,
        params: None,
        k_percent,
        flags: EvalFlags {
            precision_denominator_zero: counts.precision_denominator_zero(),
            recall_denominator_zero: counts.recall_denominator_zero(),
            notices: Vec::new(),
        },
    }
}

/// Pointwise evaluator (`pw`): every time point scored independently.
pub struct PointwiseEvaluator;

impl Evaluator for PointwiseEvaluator {
    fn name(&self) -> &str {
        "pw"
    }

    fn evaluate(
        &self,
        gt: &LabelSeries,
        pred: &LabelSeries,
        _config: &EvalConfig,
    ) -> Result<Evaluation> {
        let (counts, scores) = pw_scores(gt, pred)?;
        Ok(point_evaluation("pw", counts, scores, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::OiprError;

    fn assert_close(actual: f64, expected: f64) {
        assert!(
            (actual - expected).abs() <= 1e-12,
            "expected {expected}, got {actual}"
        );
    }

    #[test]
    fn first_point_of_long_event_scores_tiny_recall() {
        // One 50-point event; only its first point detected.
        let gt = LabelSeries::from_runs(90, &[(20, 69)]).expect("valid runs");
        let pred = LabelSeries::from_indices(90, &[20]).expect("valid labels");
        let (counts, scores) = pw_scores(&gt, &pred).expect("equal lengths");
        assert_eq!(counts.true_positives, 1);
        assert_eq!(counts.false_negatives, 49);
        assert_close(scores.precision, 1.0);
        assert_close(scores.recall, 0.02);
        assert_close(scores.f1, 2.0 * 0.02 / 1.02);
    }

    #[test]
    fn counts_false_positives_outside_events() {
        let gt = LabelSeries::from_runs(10, &[(2, 4)]).expect("valid runs");
        let pred = LabelSeries::from_indices(10, &[3, 8]).expect("valid labels");
        let (counts, scores) = pw_scores(&gt, &pred).expect("equal lengths");
        assert_eq!(
            (counts.true_positives, counts.false_positives, counts.false_negatives),
            (1, 1, 2)
        );
        assert_close(scores.precision, 0.5);
        assert_close(scores.recall, 1.0 / 3.0);
    }

    #[test]
    fn identical_series_are_perfect() {
        let gt = LabelSeries::from_runs(12, &[(1, 3), (8, 8)]).expect("valid runs");
        let (_, scores) = pw_scores(&gt, &gt).expect("equal lengths");
        assert_eq!((scores.precision, scores.recall, scores.f1), (1.0, 1.0, 1.0));
    }

    #[test]
    fn rejects_length_mismatch() {
        let gt = LabelSeries::new(vec![0, 1]).expect("valid labels");
        let pred = LabelSeries::new(vec![0, 1, 0]).expect("valid labels");
        assert!(matches!(
            pw_scores(&gt, &pred),
            Err(OiprError::LengthMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn all_normal_detection_flags_zero_denominator() {
        let gt = LabelSeries::from_indices(6, &[2]).expect("valid labels");
        let pred = LabelSeries::new(vec![0; 6]).expect("valid labels");
        let evaluation = PointwiseEvaluator
            .evaluate(&gt, &pred, &EvalConfig::default())
            .expect("equal lengths");
        assert!(evaluation.flags.precision_denominator_zero);
        assert!(!evaluation.flags.recall_denominator_zero);
        assert_eq!(evaluation.scores.f1, 0.0);
    }
}

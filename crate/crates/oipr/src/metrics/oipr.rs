// SPDX-License-Identifier: MIT OR Apache-2.0

//! Operator-interest evaluation: scores come from areas under interest
//! curves instead of point counts.

use super::{
    auc, pointwise_min, ConfusionAreas, EvalConfig, EvalFlags, Evaluation, Evaluator, PrfScores,
};
use crate::error::Result;
use crate::interest::{build_interest_curve, OiprParams};
use crate::labels::LabelSeries;

/// Computes interest-area confusion and scores for a prediction.
///
/// Both series are transformed with the same parameters; the true-positive
/// area is the area under the pointwise minimum of the two curves.
pub fn oipr_scores(
    gt: &LabelSeries,
    pred: &LabelSeries,
    params: &OiprParams,
) -> Result<(ConfusionAreas, PrfScores)> {
    super::check_equal_len(gt, pred)?;
    let gt_curve = build_interest_curve(gt, params);
    let pred_curve = build_interest_curve(pred, params);
    let tp_oi = auc(&pointwise_min(&gt_curve, &pred_curve)?);
    let areas = ConfusionAreas {
        tp_oi,
        fp_oi: auc(&pred_curve) - tp_oi,
        fn_oi: auc(&gt_curve) - tp_oi,
    };
    let scores = areas.scores();
    Ok((areas, scores))
}

/// Operator-interest evaluator (`oipr`).
///
/// When the configuration carries no curve parameters they are derived from
/// the ground truth ([`OiprParams::derived_from`]).
pub struct OperatorInterestEvaluator;

impl Evaluator for OperatorInterestEvaluator {
    fn name(&self) -> &str {
        "oipr"
    }

    fn evaluate(
        &self,
        gt: &LabelSeries,
        pred: &LabelSeries,
        config: &EvalConfig,
    ) -> Result<Evaluation> {
        let params = match config.params {
            Some(params) => params,
            None => OiprParams::derived_from(gt)?,
        };
        let (areas, scores) = oipr_scores(gt, pred, &params)?;
        let mut flags = EvalFlags {
            precision_denominator_zero: areas.precision_denominator_zero(),
            recall_denominator_zero: areas.recall_denominator_zero(),
            notices: Vec::new(),
        };
        if config.params.is_none() {
            flags
                .notices
                .push("curve parameters derived from ground truth".to_owned());
        }
        Ok(Evaluation {
            evaluator: "oipr".to_owned(),
            scores,
            counts: None,
            areas: Some(areas),
            params: Some(params),
            k_percent: None,
            flags,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::EvaluatorRegistry;

    fn assert_close(actual: f64, expected: f64) {
        assert!(
            (actual - expected).abs() <= 1e-12,
            "expected {expected}, got {actual}"
        );
    }

    #[test]
    fn identical_series_score_perfectly() {
        let gt = LabelSeries::from_runs(50, &[(10, 19), (30, 34)]).expect("valid runs");
        let params = OiprParams::new(3, 8, 0.5).expect("valid params");
        let (areas, scores) = oipr_scores(&gt, &gt, &params).expect("equal lengths");
        assert_eq!(scores.precision, 1.0);
        assert_eq!(scores.recall, 1.0);
        assert_eq!(scores.f1, 1.0);
        assert_eq!(areas.fp_oi, 0.0);
        assert_eq!(areas.fn_oi, 0.0);
    }

    #[test]
    fn single_early_point_has_perfect_precision() {
        // A detection at the event start produces a prediction curve that
        // stays under the ground-truth curve, so no false-positive area.
        let gt = LabelSeries::from_runs(90, &[(20, 69)]).expect("valid runs");
        let pred = LabelSeries::from_indices(90, &[20]).expect("valid labels");
        let params = OiprParams::new(5, 20, 0.5).expect("valid params");
        let (areas, scores) = oipr_scores(&gt, &pred, &params).expect("equal lengths");
        assert!(areas.fp_oi.abs() <= 1e-12);
        assert_close(scores.precision, 1.0);
        assert!(scores.recall < 1.0);
    }

    #[test]
    fn empty_prediction_scores_zero() {
        let gt = LabelSeries::from_runs(40, &[(10, 14)]).expect("valid runs");
        let pred = LabelSeries::new(vec![0; 40]).expect("valid labels");
        let params = OiprParams::new(2, 6, 0.5).expect("valid params");
        let (areas, scores) = oipr_scores(&gt, &pred, &params).expect("equal lengths");
        assert_eq!(areas.tp_oi, 0.0);
        assert_eq!(scores.precision, 0.0);
        assert_eq!(scores.recall, 0.0);
        assert_eq!(scores.f1, 0.0);
    }

    #[test]
    fn evaluator_derives_params_when_absent() {
        let gt = LabelSeries::from_runs(40, &[(10, 13)]).expect("valid runs");
        let registry = EvaluatorRegistry::builtin();
        let report = registry
            .evaluate("oipr", &gt, &gt, &EvalConfig::default())
            .expect("known evaluator");
        let params = report.params.expect("params echoed");
        assert_eq!(params.l_dis, 1);
        assert_eq!(params.l_obs, 4);
        assert!(report
            .flags
            .notices
            .iter()
            .any(|n| n.contains("derived")));
    }

    #[test]
    fn evaluator_flags_empty_prediction() {
        let gt = LabelSeries::from_runs(40, &[(10, 13)]).expect("valid runs");
        let pred = LabelSeries::new(vec![0; 40]).expect("valid labels");
        let registry = EvaluatorRegistry::builtin();
        let report = registry
            .evaluate("oipr", &gt, &pred, &EvalConfig::default())
            .expect("known evaluator");
        assert!(report.flags.precision_denominator_zero);
        assert!(!report.flags.recall_denominator_zero);
    }
}

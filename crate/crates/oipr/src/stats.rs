// SPDX-License-Identifier: MIT OR Apache-2.0

//! Dataset and result statistics: event counts, mean event length,
//! long-anomaly ratios, and the contaminated-normal-interval ratio.

use serde::{Deserialize, Serialize};

use crate::error::{OiprError, Result};
use crate::labels::LabelSeries;
use crate::metrics::check_equal_len;

/// Summary statistics of a labeled series, with optional extras that need
/// more inputs (a length threshold, a prediction).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DatasetStats {
    /// Series length.
    pub n_points: usize,
    /// Number of anomaly events.
    pub n_events: usize,
    /// Mean event length; absent when there are no events.
    pub avg_event_len: Option<f64>,
    /// Share of events at least as long as a threshold; see
    /// [`long_anomaly_ratios`].
    pub long_event_ratio: Option<f64>,
    /// Share of anomalous points inside those long events.
    pub long_point_ratio: Option<f64>,
    /// Share of between-event normal intervals containing a false positive;
    /// see [`contaminated_interval_ratio`].
    pub r_n: Option<f64>,
}

/// Computes the basic statistics of a ground truth: length, event count,
/// mean event length.
pub fn dataset_stats(gt: &LabelSeries) -> DatasetStats {
    let events = gt.events();
    let avg_event_len = if events.is_empty() {
        None
    } else {
        Some(gt.count_ones() as f64 / events.len() as f64)
    };
    DatasetStats {
        n_points: gt.len(),
        n_events: events.len(),
        avg_event_len,
        long_event_ratio: None,
        long_point_ratio: None,
        r_n: None,
    }
}

/// Shares of long events and of the points they hold.
///
/// Returns `(R_e, R_p)` where `R_e` is the fraction of events with length
/// at least `min_len` and `R_p` is the fraction of anomalous points lying
/// inside those events. Both are non-increasing in `min_len`.
pub fn long_anomaly_ratios(gt: &LabelSeries, min_len: usize) -> Result<(f64, f64)> {
    if min_len == 0 {
        return Err(OiprError::InvalidParameter(
            "minimum event length must be at least 1".to_owned(),
        ));
    }
    let events = gt.events();
    if events.is_empty() {
        return Err(OiprError::NoEvents);
    }
    let long_events = events.iter().filter(|e| e.len() >= min_len).count();
    let long_points: usize = events
        .iter()
        .filter(|e| e.len() >= min_len)
        .map(|e| e.len())
        .sum();
    Ok((
        long_events as f64 / events.len() as f64,
        long_points as f64 / gt.count_ones() as f64,
    ))
}

/// Fraction of between-event normal intervals containing at least one
/// predicted point.
///
/// A normal interval is the gap strictly between two adjacent ground-truth
/// events; the segments before the first event and after the last one do
/// not count. Every predicted 1 inside such an interval is a false positive
/// by construction. Returns `None` when the ground truth has fewer than two
/// events, since no between-event interval exists.
pub fn contaminated_interval_ratio(
    gt: &LabelSeries,
    pred: &LabelSeries,
) -> Result<Option<f64>> {
    check_equal_len(gt, pred)?;
    let events = gt.events();
    if events.len() < 2 {
        return Ok(None);
    }
    let mut contaminated = 0usize;
    for pair in events.windows(2) {
        let gap = pair[0].end + 1..pair[1].start;
        if gap.clone().any(|i| pred.is_anomalous(i)) {
            contaminated += 1;
        }
    }
    Ok(Some(contaminated as f64 / (events.len() - 1) as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::{
        aggregated_disturbance_detector, continuous_disturbance_detector,
        dispersed_disturbance_detector, DisturbanceConfig,
    };

    fn assert_close(actual: f64, expected: f64) {
        assert!(
            (actual - expected).abs() <= 1e-12,
            "expected {expected}, got {actual}"
        );
    }

    /// One 10-point event plus six 1-point events.
    fn mixed_gt() -> LabelSeries {
        LabelSeries::from_runs(
            419,
            &[(20, 29), (70, 70), (111, 111), (152, 152), (193, 193), (234, 234), (275, 275)],
        )
        .expect("valid runs")
    }

    #[test]
    fn basic_stats_count_events_and_mean_length() {
        let stats = dataset_stats(&mixed_gt());
        assert_eq!(stats.n_points, 419);
        assert_eq!(stats.n_events, 7);
        assert_close(stats.avg_event_len.expect("has events"), 16.0 / 7.0);
    }

    #[test]
    fn basic_stats_report_absent_mean_without_events() {
        let stats = dataset_stats(&LabelSeries::new(vec![0; 5]).expect("valid"));
        assert_eq!(stats.n_events, 0);
        assert_eq!(stats.avg_event_len, None);
    }

    #[test]
    fn long_ratios_split_events_and_points() {
        let (r_e, r_p) = long_anomaly_ratios(&mixed_gt(), 4).expect("has events");
        assert_close(r_e, 1.0 / 7.0);
        assert_close(r_p, 10.0 / 16.0);
    }

    #[test]
    fn long_ratios_cover_threshold_extremes() {
        let gt = mixed_gt();
        assert_eq!(long_anomaly_ratios(&gt, 1).expect("ok"), (1.0, 1.0));
        assert_eq!(long_anomaly_ratios(&gt, 11).expect("ok"), (0.0, 0.0));
        assert!(long_anomaly_ratios(&gt, 0).is_err());
        let empty = LabelSeries::new(vec![0; 5]).expect("valid");
        assert!(matches!(long_anomaly_ratios(&empty, 1), Err(OiprError::NoEvents)));
    }

    #[test]
    fn contamination_is_zero_for_ideal_prediction() {
        let gt = mixed_gt();
        assert_eq!(contaminated_interval_ratio(&gt, &gt).expect("ok"), Some(0.0));
    }

    #[test]
    fn contamination_is_full_for_all_ones() {
        let gt = mixed_gt();
        let ones = LabelSeries::new(vec![1; gt.len()]).expect("valid");
        assert_eq!(contaminated_interval_ratio(&gt, &ones).expect("ok"), Some(1.0));
    }

    #[test]
    fn contamination_needs_two_events() {
        let gt = LabelSeries::from_runs(30, &[(5, 9)]).expect("valid runs");
        assert_eq!(contaminated_interval_ratio(&gt, &gt).expect("ok"), None);
    }

    #[test]
    fn prefix_disturbance_misses_between_event_intervals() {
        // Events lie beyond the 3% prefix, so a continuous head disturbance
        // adds no FP between events.
        let gt = LabelSeries::from_runs(1000, &[(100, 109), (500, 509)]).expect("valid runs");
        let pred = continuous_disturbance_detector(&gt, &DisturbanceConfig::default())
            .expect("valid config");
        assert_eq!(contaminated_interval_ratio(&gt, &pred).expect("ok"), Some(0.0));
    }

    #[test]
    fn dispersed_fps_contaminate_more_intervals_than_aggregated() {
        // Ten events spread over 2,000 points, 1% dispersed FPs: dispersion
        // reaches many between-event intervals, prefix aggregation reaches
        // at most the first.
        let runs: Vec<(usize, usize)> = (0..10).map(|k| (100 + 190 * k, 109 + 190 * k)).collect();
        let gt = LabelSeries::from_runs(2000, &runs).expect("valid runs");
        let cfg = DisturbanceConfig { seed: 11, ..Default::default() };
        let dispersed = dispersed_disturbance_detector(&gt, &cfg).expect("enough normals");
        let aggregated = aggregated_disturbance_detector(&gt, &cfg).expect("enough normals");
        let r_disp = contaminated_interval_ratio(&gt, &dispersed).expect("ok").expect("2+ events");
        let r_aggr = contaminated_interval_ratio(&gt, &aggregated).expect("ok").expect("2+ events");
        assert!(r_disp > r_aggr, "expected {r_disp} > {r_aggr}");
    }
}

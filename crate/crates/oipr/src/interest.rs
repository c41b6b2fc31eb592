// SPDX-License-Identifier: MIT OR Apache-2.0

//! Operator-interest curves: the attention an operator pays over time given a
//! stream of binary anomaly flags.
//!
//! A positive label opens an episode (or extends one, since gaps of at most
//! `l_obs` points merge neighbouring positive runs). Interest is 1 at the
//! first point of an episode, decays over roughly `l_dis` points toward the
//! persistence floor `b_dur` while the episode continues, and once labels
//! return to normal fades to zero across an observation window of `l_obs`
//! points. Expanding both the ground truth and a detection sequence this way
//! turns point-level comparison into a comparison of interest mass.

use serde::{Deserialize, Serialize};

use crate::error::{OiprError, Result};
use crate::labels::LabelSeries;

/// Logistic function `1 / (1 + e^(-x))`.
pub fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Discovery/duration-phase interest at offset `i` from the episode start.
///
/// Equals 1 at the start, then follows a logistic ramp from 1 down toward
/// `b_dur`, reaching roughly the midpoint at `i = l_dis / 2`. For `l_dis = 0`
/// the ramp collapses and every later point sits at the floor `b_dur`.
pub fn omega(i: usize, l_dis: usize, b_dur: f64) -> f64 {
    if i == 0 {
        return 1.0;
    }
    if l_dis == 0 {
        return b_dur;
    }
    let ramp = sigmoid(10.0 * i as f64 / l_dis as f64 - 5.0);
    b_dur + (1.0 - b_dur) * (1.0 - ramp) / (1.0 - sigmoid(-5.0))
}

/// Observation-phase decay at offset `i` from the most recent anomalous point.
///
/// Equals 1 on the anomalous point itself, follows a logistic fade across the
/// window, and is exactly zero beyond `l_obs` (including the whole positive
/// axis when `l_obs = 0`).
pub fn gamma(i: usize, l_obs: usize) -> f64 {
    if i == 0 {
        return 1.0;
    }
    if i > l_obs {
        return 0.0;
    }
    let fade = sigmoid(10.0 * i as f64 / l_obs as f64 - 5.0);
    (1.0 - fade) / (1.0 - sigmoid(-5.0))
}

/// Shape parameters for interest curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OiprParams {
    /// Length of the discovery phase: how fast fresh interest decays.
    pub l_dis: usize,
    /// Length of the observation window that follows the last anomalous point.
    pub l_obs: usize,
    /// Residual interest while an anomaly persists, in `[0, 1)`.
    pub b_dur: f64,
}

impl OiprParams {
    /// Validates `b_dur` and builds the parameter set.
    pub fn new(l_dis: usize, l_obs: usize, b_dur: f64) -> Result<Self> {
        if !b_dur.is_finite() || !(0.0..1.0).contains(&b_dur) {
            return Err(OiprError::InvalidParameter(format!(
                "b_dur must lie in [0, 1), got {b_dur}"
            )));
        }
        Ok(Self { l_dis, l_obs, b_dur })
    }

    /// Derives defaults from the ground truth: with a mean event length of
    /// `m`, uses `l_dis = ceil(m / 4)`, `l_obs = ceil(m)`, and `b_dur = 0.5`.
    ///
    /// Fails when the ground truth contains no events.
    pub fn derived_from(gt: &LabelSeries) -> Result<Self> {
        let events = gt.events();
        if events.is_empty() {
            return Err(OiprError::NoEvents);
        }
        let total: usize = events.iter().map(|e| e.len()).sum();
        let n = events.len();
        Ok(Self {
            l_dis: total.div_ceil(4 * n),
            l_obs: total.div_ceil(n),
            b_dur: 0.5,
        })
    }
}

/// A non-negative interest value per time point.
///
/// Curves built from a series of length `T` always have `T + l_obs` points so
/// an episode ending at the final label keeps its full observation window.
#[derive(Debug, Clone, PartialEq)]
pub struct InterestCurve(Vec<f64>);

impl InterestCurve {
    pub(crate) fn from_values(values: Vec<f64>) -> Self {
        Self(values)
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether the curve has no samples (possible only when `T = l_obs = 0`
    /// inputs are rejected earlier, so practically never).
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The raw samples.
    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// Expands binary labels into an operator-interest curve.
///
/// Single forward pass: a positive label more than `l_obs` points after the
/// previous one opens a new episode, otherwise it extends the current one.
/// Positive points take the discovery/duration value `omega(t - start)`;
/// normal points within reach of the window take `omega(t - start) *
/// gamma(t - last_positive)`. The returned curve has `labels.len() + l_obs`
/// samples.
pub fn build_interest_curve(labels: &LabelSeries, params: &OiprParams) -> InterestCurve {
    let t_len = labels.len();
    let l_obs = params.l_obs as i64;
    let mut curve = vec![0.0; t_len + params.l_obs];
    // Both cursors start far enough in the past that the first positive label
    // always opens a fresh episode.
    let mut p_start: i64 = -l_obs - 1;
    let mut p_end: i64 = -l_obs - 1;
    for (t, sample) in curve.iter_mut().enumerate().take(t_len) {
        let ti = t as i64;
        if labels.is_anomalous(t) {
            if ti - p_end > l_obs {
                p_start = ti;
            }
            *sample = omega((ti - p_start) as usize, params.l_dis, params.b_dur);
            p_end = ti;
        } else if ti - p_end <= l_obs {
            *sample = omega((ti - p_start) as usize, params.l_dis, params.b_dur)
                * gamma((ti - p_end) as usize, params.l_obs);
        }
    }
    for (t, sample) in curve.iter_mut().enumerate().skip(t_len) {
        let ti = t as i64;
        if ti - p_end <= l_obs {
            *sample = omega((ti - p_start) as usize, params.l_dis, params.b_dur)
                * gamma((ti - p_end) as usize, params.l_obs);
        }
    }
    InterestCurve(curve)
}

/// Reference interest profile for a single continuous event.
///
/// Describes one event of duration `l_dis + l_dur` starting at offset 0:
/// discovery/duration values while the event lasts, then a frozen
/// `omega(l_dis + l_dur)` scaled by the observation fade. This closed form
/// exists for cross-checking the single-event case; [`build_interest_curve`]
/// is the production path and re-evaluates `omega` throughout the window.
pub fn phi(i: usize, l_dur: usize, params: &OiprParams) -> f64 {
    let event_len = params.l_dis + l_dur;
    if i < event_len {
        omega(i, params.l_dis, params.b_dur)
    } else if i < event_len + params.l_obs {
        omega(event_len, params.l_dis, params.b_dur)
            * gamma(i - event_len + 1, params.l_obs)
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected}, got {actual} (tolerance {tol})"
        );
    }

    fn params(l_dis: usize, l_obs: usize, b_dur: f64) -> OiprParams {
        OiprParams::new(l_dis, l_obs, b_dur).expect("valid params")
    }

    #[test]
    fn sigmoid_fixed_points() {
        assert_eq!(sigmoid(0.0), 0.5);
        assert_close(sigmoid(-5.0), 0.0066928509242848554, 1e-15);
        assert_close(sigmoid(5.0), 0.9933071490757153, 1e-15);
    }

    #[test]
    fn omega_boundary_values() {
        // The episode start is always worth full interest.
        assert_eq!(omega(0, 5, 0.5), 1.0);
        // At the end of the discovery phase the ramp has nearly bottomed out.
        assert_close(omega(5, 5, 0.5), 0.5033689734995427, 1e-12);
        assert_close(omega(3, 3, 0.25), 0.25 + 0.75 * 0.006737946999085343, 1e-12);
    }

    #[test]
    fn omega_converges_to_duration_floor() {
        for &b_dur in &[0.0, 0.25, 0.5, 0.9] {
            assert_close(omega(2000, 1, b_dur), b_dur, 1e-9);
        }
    }

    #[test]
    fn omega_is_non_increasing_after_start() {
        let mut previous = omega(1, 7, 0.3);
        for i in 2..200 {
            let current = omega(i, 7, 0.3);
            assert!(current <= previous, "omega rose at i={i}");
            previous = current;
        }
    }

    #[test]
    fn omega_zero_discovery_uses_floor_immediately() {
        assert_eq!(omega(0, 0, 0.5), 1.0);
        assert_eq!(omega(1, 0, 0.5), 0.5);
        assert_eq!(omega(100, 0, 0.0), 0.0);
    }

    #[test]
    fn gamma_boundary_values() {
        assert_eq!(gamma(0, 3), 1.0);
        assert_close(gamma(3, 3), 0.006737946999085343, 1e-12);
        assert_eq!(gamma(4, 3), 0.0);
        // A zero-length window vanishes everywhere past the anomalous point.
        assert_eq!(gamma(1, 0), 0.0);
    }

    #[test]
    fn phi_matches_piecewise_definition() {
        let p = params(2, 3, 0.5);
        // Event of length l_dis + l_dur = 4: discovery values inside...
        assert_eq!(phi(0, 2, &p), 1.0);
        assert_close(phi(3, 2, &p), omega(3, 2, 0.5), 1e-15);
        // ...then a frozen omega scaled by the fade...
        assert_close(phi(4, 2, &p), omega(4, 2, 0.5) * gamma(1, 3), 1e-15);
        assert_close(phi(6, 2, &p), omega(4, 2, 0.5) * gamma(3, 3), 1e-15);
        // ...and nothing beyond the observation window.
        assert_eq!(phi(7, 2, &p), 0.0);
    }

    #[test]
    fn curve_matches_hand_executed_example() {
        // T = 10 with anomalies at {2, 3}, l_dis = 2, l_obs = 3, b_dur = 0.5.
        let labels = LabelSeries::from_indices(10, &[2, 3]).expect("valid labels");
        let curve = build_interest_curve(&labels, &params(2, 3, 0.5));
        assert_eq!(curve.len(), 13);
        let v = curve.values();
        assert_eq!(v[0], 0.0);
        assert_eq!(v[1], 0.0);
        assert_eq!(v[2], 1.0);
        assert_close(v[3], 0.7516844867497714, 1e-12);
        assert_close(v[4], 0.4262520365919278, 1e-12);
        assert_close(v[5], 0.07997343316402052, 1e-12);
        assert_close(v[6], 0.0033689745370631373, 1e-12);
        for (t, &value) in v.iter().enumerate().skip(7) {
            assert_eq!(value, 0.0, "expected zero at index {t}");
        }
    }

    #[test]
    fn fragments_within_observation_window_merge() {
        // Gap of 2 <= l_obs = 3 between {2,3} and {6}: the episode continues,
        // so the second fragment resumes the ramp instead of restarting at 1.
        let labels = LabelSeries::from_indices(12, &[2, 3, 6]).expect("valid labels");
        let curve = build_interest_curve(&labels, &params(2, 3, 0.5));
        let v = curve.values();
        assert_close(v[6], omega(4, 2, 0.5), 1e-15);
        // Gap points keep decaying relative to the last positive point.
        assert_close(v[4], omega(2, 2, 0.5) * gamma(1, 3), 1e-15);
        assert_close(v[5], omega(3, 2, 0.5) * gamma(2, 3), 1e-15);
    }

    #[test]
    fn fragments_beyond_observation_window_restart() {
        // Gap of 3 > l_obs = 2: index 7 opens a fresh episode at full interest.
        let labels = LabelSeries::from_indices(12, &[2, 3, 7]).expect("valid labels");
        let curve = build_interest_curve(&labels, &params(2, 2, 0.5));
        assert_eq!(curve.values()[7], 1.0);
    }

    #[test]
    fn first_point_always_opens_episode() {
        let labels = LabelSeries::from_indices(5, &[0]).expect("valid labels");
        let curve = build_interest_curve(&labels, &params(3, 2, 0.5));
        assert_eq!(curve.values()[0], 1.0);
    }

    #[test]
    fn all_normal_series_yields_zero_curve() {
        let labels = LabelSeries::new(vec![0; 6]).expect("valid labels");
        let curve = build_interest_curve(&labels, &params(2, 3, 0.5));
        assert_eq!(curve.len(), 9);
        assert!(curve.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn zero_observation_window_keeps_series_length() {
        let labels = LabelSeries::from_indices(8, &[3, 4]).expect("valid labels");
        let curve = build_interest_curve(&labels, &params(2, 0, 0.5));
        assert_eq!(curve.len(), 8);
        let support: Vec<usize> = (0..8).filter(|&t| curve.values()[t] > 0.0).collect();
        assert_eq!(support, vec![3, 4]);
    }

    #[test]
    fn derived_params_round_mean_event_length_up() {
        let four_point_events =
            LabelSeries::from_runs(30, &[(0, 3), (10, 13), (20, 23)]).expect("valid runs");
        let p = OiprParams::derived_from(&four_point_events).expect("has events");
        assert_eq!((p.l_dis, p.l_obs), (1, 4));
        assert_eq!(p.b_dur, 0.5);

        let mixed = LabelSeries::from_runs(20, &[(0, 2), (10, 13)]).expect("valid runs");
        let p = OiprParams::derived_from(&mixed).expect("has events");
        // Mean event length 3.5 rounds up to 4; a quarter of it rounds up to 1.
        assert_eq!((p.l_dis, p.l_obs), (1, 4));
    }

    #[test]
    fn derived_params_require_events() {
        let labels = LabelSeries::new(vec![0; 10]).expect("valid labels");
        assert!(matches!(
            OiprParams::derived_from(&labels),
            Err(OiprError::NoEvents)
        ));
    }

    #[test]
    fn params_reject_out_of_range_floor() {
        assert!(OiprParams::new(1, 1, 1.0).is_err());
        assert!(OiprParams::new(1, 1, -0.1).is_err());
        assert!(OiprParams::new(1, 1, f64::NAN).is_err());
        assert!(OiprParams::new(0, 0, 0.0).is_ok());
    }

    #[test]
    fn curve_values_stay_in_unit_interval() {
        let labels =
            LabelSeries::from_runs(40, &[(0, 5), (9, 9), (20, 30)]).expect("valid runs");
        for &(l_dis, l_obs, b_dur) in &[(0, 0, 0.0), (1, 4, 0.25), (8, 8, 0.9)] {
            let curve = build_interest_curve(&labels, &params(l_dis, l_obs, b_dur));
            for (t, &v) in curve.values().iter().enumerate() {
                assert!((0.0..=1.0).contains(&v), "value {v} at {t} out of range");
            }
        }
    }
}

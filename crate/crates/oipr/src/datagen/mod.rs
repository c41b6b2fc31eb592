// SPDX-License-Identifier: MIT OR Apache-2.0

//! Adversarial detector constructions and the benchmark scenario dataset.
//!
//! The detectors here produce prediction series from a ground truth by
//! following a fixed exploit strategy (detect only first points, only long
//! events, pad with disturbance false positives, ...). They are useful for
//! probing how an evaluator rewards behavior no operator would want.
//! All randomized constructions are seeded and fully deterministic.

mod scenarios;

pub use scenarios::{
    build_all_scenarios, build_scenario, scenario_names, ExpectedScores, ScenarioCase,
    StochasticSpec, SCENARIO_B_DUR, SCENARIO_L_DIS, SCENARIO_L_OBS,
};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{OiprError, Result};
use crate::labels::LabelSeries;

/// Parameters for the disturbance detectors (`d_disp`, `d_aggr`, `d_cont`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisturbanceConfig {
    /// Fraction of the series length inserted as false-positive points.
    pub fp_rate: f64,
    /// Fraction of the series prefix receiving aggregated or continuous
    /// disturbance.
    pub head_fraction: f64,
    /// Seed for the placement RNG.
    pub seed: u64,
}

impl Default for DisturbanceConfig {
    fn default() -> Self {
        Self {
            fp_rate: 0.01,
            head_fraction: 0.03,
            seed: 0,
        }
    }
}

impl DisturbanceConfig {
    fn validate(&self) -> Result<()> {
        for (name, value) in [("fp_rate", self.fp_rate), ("head_fraction", self.head_fraction)] {
            if !value.is_finite() || !(0.0..1.0).contains(&value) {
                return Err(OiprError::InvalidParameter(format!(
                    "{name} must lie in [0, 1), got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// Detector `d_fp`: marks exactly the first point of every ground-truth
/// event.
pub fn first_point_detector(gt: &LabelSeries) -> LabelSeries {
    let mut values = vec![0u8; gt.len()];
    for event in gt.events() {
        values[event.start] = 1;
    }
    LabelSeries::new(values).expect("same length as a valid series")
}

/// Detector `d_long`: reproduces every ground-truth event of length at
/// least `min_len` in full and nothing else.
pub fn long_event_detector(gt: &LabelSeries, min_len: usize) -> Result<LabelSeries> {
    if min_len == 0 {
        return Err(OiprError::InvalidParameter(
            "minimum event length must be at least 1".to_owned(),
        ));
    }
    let mut values = vec![0u8; gt.len()];
    for event in gt.events().into_iter().filter(|e| e.len() >= min_len) {
        values[event.start..=event.end].fill(1);
    }
    Ok(LabelSeries::new(values).expect("same length as a valid series"))
}

/// Detector `d_disp`: the ideal prediction plus `floor(fp_rate * T)` false
/// positives placed uniformly at random (without replacement) on normal
/// positions anywhere in the series.
pub fn dispersed_disturbance_detector(
    gt: &LabelSeries,
    cfg: &DisturbanceConfig,
) -> Result<LabelSeries> {
    cfg.validate()?;
    let fp_count = disturbance_point_count(gt.len(), cfg.fp_rate);
    place_false_positives(gt, gt.len(), fp_count, cfg.seed)
}

/// Detector `d_aggr`: the ideal prediction plus `floor(fp_rate * T)` false
/// positives drawn only from normal positions in the first
/// `floor(head_fraction * T)` indices.
pub fn aggregated_disturbance_detector(
    gt: &LabelSeries,
    cfg: &DisturbanceConfig,
) -> Result<LabelSeries> {
    cfg.validate()?;
    let fp_count = disturbance_point_count(gt.len(), cfg.fp_rate);
    let head_len = disturbance_point_count(gt.len(), cfg.head_fraction);
    place_false_positives(gt, head_len, fp_count, cfg.seed)
}

/// Detector `d_cont`: the ideal prediction with the first
/// `floor(head_fraction * T)` indices forced to 1.
pub fn continuous_disturbance_detector(
    gt: &LabelSeries,
    cfg: &DisturbanceConfig,
) -> Result<LabelSeries> {
    cfg.validate()?;
    let head_len = disturbance_point_count(gt.len(), cfg.head_fraction);
    let mut values = gt.values().to_vec();
    values[..head_len].fill(1);
    Ok(LabelSeries::new(values).expect("same length as a valid series"))
}

/// A detector that fires independently at every index with probability `p`.
pub fn random_detector(len: usize, p: f64, seed: u64) -> Result<LabelSeries> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(OiprError::InvalidParameter(format!(
            "firing probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..len).map(|_| u8::from(rng.gen_bool(p))).collect();
    LabelSeries::new(values)
}

/// Derives an independent stream seed from a base seed, so that related
/// generations (scenario cases, trial indices) do not share RNG states.
///
/// The mixing is a SplitMix64-style finalizer; any change to either input
/// flips the output thoroughly.
pub fn mix64(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for one trial of a repeated stochastic generation.
pub fn trial_seed(base: u64, trial: usize) -> u64 {
    mix64(base, trial as u64)
}

fn disturbance_point_count(len: usize, fraction: f64) -> usize {
    (fraction * len as f64).floor() as usize
}

/// Copies `gt` and raises `fp_count` normal positions within
/// `[0, window_len)` to 1, sampled uniformly without replacement.
fn place_false_positives(
    gt: &LabelSeries,
    window_len: usize,
    fp_count: usize,
    seed: u64,
) -> Result<LabelSeries> {
    let normal_positions: Vec<usize> = (0..window_len.min(gt.len()))
        .filter(|&i| !gt.is_anomalous(i))
        .collect();
    if normal_positions.len() < fp_count {
        return Err(OiprError::InsufficientNormalPositions {
            needed: fp_count,
            available: normal_positions.len(),
        });
    }
    let mut values = gt.values().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for chosen in sample(&mut rng, normal_positions.len(), fp_count) {
        values[normal_positions[chosen]] = 1;
    }
    Ok(LabelSeries::new(values).expect("same length as a valid series"))
}

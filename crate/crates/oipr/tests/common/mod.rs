// SPDX-License-Identifier: MIT OR Apache-2.0

//! Shared test helpers: a brute-force interest-curve oracle that builds the
//! curve from explicit episode structure, independent of the library's
//! single-pass construction, plus random series generators.

use oipr::interest::{gamma, omega, OiprParams};
use oipr::labels::LabelSeries;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Anomalous indices grouped into episodes: a positive point joins the
/// current episode when it lands within the observation window of the
/// previous positive point, i.e. when `t - prev <= l_obs`. With `l_obs = 0`
/// even adjacent positives stay separate, matching the cursor semantics of
/// the single-pass construction.
fn episodes(labels: &LabelSeries, l_obs: usize) -> Vec<Vec<usize>> {
    let mut grouped: Vec<Vec<usize>> = Vec::new();
    for (t, &v) in labels.values().iter().enumerate() {
        if v != 1 {
            continue;
        }
        match grouped.last_mut() {
            Some(episode)
                if t - *episode.last().expect("episodes are non-empty") <= l_obs =>
            {
                episode.push(t);
            }
            _ => grouped.push(vec![t]),
        }
    }
    grouped
}

/// Start indices of the merged episodes of a series.
#[allow(dead_code)]
pub fn episode_starts(labels: &LabelSeries, l_obs: usize) -> Vec<usize> {
    episodes(labels, l_obs)
        .iter()
        .map(|episode| episode[0])
        .collect()
}

/// Brute-force reference for the interest curve: lays episodes out one at a
/// time, writing plateau values on positive points, decayed plateau values
/// in intra-episode gaps, and a fading tail after the last positive point.
/// Index loops are deliberate — each position's value is defined by its
/// distance to episode anchors, which enumerate-style iteration obscures.
#[allow(dead_code, clippy::needless_range_loop)]
pub fn oracle_interest_curve(labels: &LabelSeries, params: &OiprParams) -> Vec<f64> {
    let t_len = labels.len();
    let mut curve = vec![0.0; t_len + params.l_obs];
    for episode in episodes(labels, params.l_obs) {
        let episode_start = episode[0];
        let episode_end = *episode.last().expect("episodes are non-empty");

        // Inside the episode span: positive points carry the plateau, gaps
        // decay it from the nearest positive point on the left.
        for t in episode_start..=episode_end {
            let plateau = omega(t - episode_start, params.l_dis, params.b_dur);
            if labels.values()[t] == 1 {
                curve[t] = plateau;
            } else {
                let prev = episode
                    .iter()
                    .copied()
                    .take_while(|&p| p < t)
                    .last()
                    .expect("gap positions follow a positive point");
                curve[t] = plateau * gamma(t - prev, params.l_obs);
            }
        }

        // Fading tail after the last positive point; `episode_end` is at most
        // `t_len - 1`, so the window always fits in the padded curve.
        for t in episode_end + 1..=episode_end + params.l_obs {
            let plateau = omega(t - episode_start, params.l_dis, params.b_dur);
            curve[t] = plateau * gamma(t - episode_end, params.l_obs);
        }
    }
    curve
}

/// Random binary series of length `len` with i.i.d. anomaly probability `p`.
#[allow(dead_code)]
pub fn random_series(rng: &mut ChaCha8Rng, len: usize, p: f64) -> LabelSeries {
    let values = (0..len).map(|_| u8::from(rng.gen_bool(p))).collect();
    LabelSeries::new(values).expect("generated labels are binary")
}

/// Like [`random_series`], but regenerates until at least one anomaly
/// exists.
#[allow(dead_code)]
pub fn random_series_with_event(rng: &mut ChaCha8Rng, len: usize, p: f64) -> LabelSeries {
    loop {
        let series = random_series(rng, len, p);
        if series.count_ones() > 0 {
            return series;
        }
    }
}

// SPDX-License-Identifier: MIT OR Apache-2.0

//! Binary label sequences and the contiguous anomaly events they contain.

use serde::{Deserialize, Serialize};

use crate::error::{OiprError, Result};

/// A binary anomaly-label sequence over discrete, equally spaced time points.
///
/// Every value is 0 (normal) or 1 (anomalous) and the sequence is never empty;
/// both properties are enforced at construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>")]
pub struct LabelSeries(Vec<u8>);

impl LabelSeries {
    /// Validates that `values` is non-empty and strictly 0/1, then wraps it.
    pub fn new(values: Vec<u8>) -> Result<Self> {
        if values.is_empty() {
            return Err(OiprError::EmptySeries);
        }
        for (index, &value) in values.iter().enumerate() {
            if value > 1 {
                return Err(OiprError::InvalidLabel { index, value });
            }
        }
        Ok(Self(values))
    }

    /// Builds a series of `len` zeros with ones at the given indices.
    pub fn from_indices(len: usize, ones: &[usize]) -> Result<Self> {
        let mut values = vec![0u8; len];
        for &index in ones {
            if index >= len {
                return Err(OiprError::InvalidParameter(format!(
                    "index {index} is out of bounds for a series of length {len}"
                )));
            }
            values[index] = 1;
        }
        Self::new(values)
    }

    /// Builds a series of `len` zeros with ones over the inclusive ranges in `runs`.
    pub fn from_runs(len: usize, runs: &[(usize, usize)]) -> Result<Self> {
        let mut values = vec![0u8; len];
        for &(start, end) in runs {
            if start > end || end >= len {
                return Err(OiprError::InvalidParameter(format!(
                    "run {start}..={end} is invalid for a series of length {len}"
                )));
            }
            for value in &mut values[start..=end] {
                *value = 1;
            }
        }
        Self::new(values)
    }

    /// Number of time points.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: construction rejects empty sequences.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The raw 0/1 values.
    pub fn values(&self) -> &[u8] {
        &self.0
    }

    /// Whether the point at `t` is labelled anomalous.
    pub fn is_anomalous(&self, t: usize) -> bool {
        self.0[t] == 1
    }

    /// Number of anomalous points.
    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&v| v == 1).count()
    }

    /// Extracts the maximal runs of consecutive 1-labels, in ascending order.
    pub fn events(&self) -> Vec<Event> {
        let mut events = Vec::new();
        let mut run_start = None;
        for (t, &value) in self.0.iter().enumerate() {
            match (value, run_start) {
                (1, None) => run_start = Some(t),
                (0, Some(start)) => {
                    events.push(Event { start, end: t - 1 });
                    run_start = None;
                }
                _ => {}
            }
        }
        if let Some(start) = run_start {
            events.push(Event { start, end: self.0.len() - 1 });
        }
        events
    }
}

impl TryFrom<Vec<u8>> for LabelSeries {
    type Error = OiprError;

    fn try_from(values: Vec<u8>) -> Result<Self> {
        Self::new(values)
    }
}

/// A maximal run of consecutive anomalous points; both ends are inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub start: usize,
    pub end: usize,
}

impl Event {
    /// Number of points the event spans.
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    /// Always false: an event spans at least one point.
    pub fn is_empty(&self) -> bool {
        false
    }
}

// SPDX-License-Identifier: MIT OR Apache-2.0

//! Evaluator characteristics: a scenario × evaluator score matrix and the
//! decision rules that condense it into per-evaluator verdicts.
//!
//! Six characteristics are beneficial (an evaluator should have them) and
//! three are failure modes (an evaluator should not). Each verdict comes
//! from comparing scores across the cases of one scenario, with a small
//! epsilon so ties never count as strict improvements.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::datagen::{random_detector, trial_seed, ScenarioCase};
use crate::error::{OiprError, Result};
use crate::metrics::{EvalConfig, EvaluatorRegistry, PrfScores};

/// Comparison slack: score differences at or below this are ties.
const EPS: f64 = 1e-9;
/// Minimum F1 gap treated as "significant" for the fragments-merging rule.
const SIGNIFICANT_GAP: f64 = 0.1;
/// F1 an evaluator would give the long-event-only detector if every event
/// weighed equally (detecting 1 of 7 events with perfect precision):
/// 2·(1/7)/(1 + 1/7) = 0.25. Scoring above this means long events still
/// carry extra weight.
const EVENT_PROPORTIONAL_F1: f64 = 0.25;

/// The nine behaviors checked by [`characteristic_verdicts`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Characteristic {
    /// Detecting an event at all earns more than the overlap share alone.
    ExistenceDetectionReward,
    /// Scores rise with the detected share of an event.
    OverlapProportionAwareness,
    /// Splitting a detection into fragments costs recall.
    FragmentedResultsPenalty,
    /// Nearby false positives are absorbed; scattered ones are not.
    FragmentsMerging,
    /// Slightly shifted detections still earn credit.
    AmbiguousLabelHandling,
    /// Earlier detection of the same event earns more.
    EarlyDetectionReward,
    /// Failure mode: fragmented results inflate precision.
    FragmentationMisleadingPrecision,
    /// Failure mode: few long events dominate many short ones.
    LongAnomalyMisleading,
    /// Failure mode: false positives near sparse events inflate scores.
    SparseAnomalyMisleading,
}

impl Characteristic {
    /// All characteristics in report row order.
    pub fn all() -> [Characteristic; 9] {
        [
            Self::ExistenceDetectionReward,
            Self::OverlapProportionAwareness,
            Self::FragmentedResultsPenalty,
            Self::FragmentsMerging,
            Self::AmbiguousLabelHandling,
            Self::EarlyDetectionReward,
            Self::FragmentationMisleadingPrecision,
            Self::LongAnomalyMisleading,
            Self::SparseAnomalyMisleading,
        ]
    }

    /// True for behaviors an evaluator should *not* have.
    pub fn is_failure_mode(self) -> bool {
        matches!(
            self,
            Self::FragmentationMisleadingPrecision
                | Self::LongAnomalyMisleading
                | Self::SparseAnomalyMisleading
        )
    }

    /// Human-readable row label.
    pub fn label(self) -> &'static str {
        match self {
            Self::ExistenceDetectionReward => "existence detection reward",
            Self::OverlapProportionAwareness => "overlap proportion awareness",
            Self::FragmentedResultsPenalty => "fragmented results penalty",
            Self::FragmentsMerging => "fragments merging",
            Self::AmbiguousLabelHandling => "ambiguous label handling",
            Self::EarlyDetectionReward => "early detection reward",
            Self::FragmentationMisleadingPrecision => "fragmentation misleading precision",
            Self::LongAnomalyMisleading => "long anomaly misleading",
            Self::SparseAnomalyMisleading => "sparse anomaly misleading",
        }
    }
}

/// Outcome of one characteristic check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The behavior shows in full.
    Present,
    /// The behavior does not show.
    Absent,
    /// The behavior shows only for part of the case range.
    Piecewise,
    /// Failure modes only: dampened but not eliminated.
    Mitigated,
}

impl Verdict {
    /// Table cell symbol. Beneficial rows use check/cross; failure-mode
    /// rows use circle/dash so "present" reads as bad.
    pub fn symbol(self, failure_mode: bool) -> &'static str {
        match (self, failure_mode) {
            (Self::Present, false) => "✓",
            (Self::Absent, false) => "×",
            (Self::Present, true) => "◦",
            (Self::Absent, true) => "−",
            (Self::Piecewise, _) => "*piecewise",
            (Self::Mitigated, _) => "*mitigated",
        }
    }
}

/// Scores of every requested evaluator on one scenario case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRow {
    /// Scenario the case belongs to.
    pub scenario_name: String,
    /// Case identifier.
    pub case_name: String,
    /// True when scores are means over a seeded trial ensemble.
    pub stochastic: bool,
    /// Computed scores per evaluator name.
    pub results: BTreeMap<String, PrfScores>,
}

/// The full scenario × evaluator matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioMatrix {
    /// Evaluator names, in requested (column) order.
    pub evaluators: Vec<String>,
    /// One row per case, in input order.
    pub rows: Vec<MatrixRow>,
}

impl ScenarioMatrix {
    fn row(&self, scenario: &str, case: &str) -> Result<&MatrixRow> {
        self.rows
            .iter()
            .find(|r| r.scenario_name == scenario && r.case_name == case)
            .ok_or_else(|| OiprError::MatrixIncomplete(format!("missing case {scenario}/{case}")))
    }

    fn scores(&self, scenario: &str, case: &str, evaluator: &str) -> Result<PrfScores> {
        self.row(scenario, case)?
            .results
            .get(evaluator)
            .copied()
            .ok_or_else(|| {
                OiprError::MatrixIncomplete(format!(
                    "missing {evaluator} scores for {scenario}/{case}"
                ))
            })
    }

    /// Text rendering: one row per case, slash-separated triples.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{:<22} {:<5}", "scenario", "case"));
        for name in &self.evaluators {
            out.push_str(&format!(" {name:<18}"));
        }
        out.push('\n');
        for row in &self.rows {
            let case_name = if row.stochastic {
                format!("{}*", row.case_name)
            } else {
                row.case_name.clone()
            };
            out.push_str(&format!("{:<22} {:<5}", row.scenario_name, case_name));
            for name in &self.evaluators {
                match row.results.get(name) {
                    Some(s) => out.push_str(&format!(
                        " {:<18}",
                        format!("{:.3}/{:.3}/{:.3}", s.precision, s.recall, s.f1)
                    )),
                    None => out.push_str(&format!(" {:<18}", "-")),
                }
            }
            out.push('\n');
        }
        if self.rows.iter().any(|r| r.stochastic) {
            out.push_str("* mean over seeded trials\n");
        }
        out
    }
}

/// Evaluates every case with every named evaluator.
///
/// Deterministic cases are scored once; stochastic cases are scored as the
/// per-component mean over their seeded trial ensemble.
pub fn scenario_matrix(
    registry: &EvaluatorRegistry,
    evaluators: &[&str],
    cases: &[ScenarioCase],
) -> Result<ScenarioMatrix> {
    let mut rows = Vec::with_capacity(cases.len());
    for case in cases {
        let config = EvalConfig {
            params: Some(case.params),
            ..EvalConfig::default()
        };
        let mut results = BTreeMap::new();
        for &name in evaluators {
            let scores = match case.stochastic {
                None => registry.evaluate(name, &case.ground_truth, &case.prediction, &config)?.scores,
                Some(spec) => {
                    let mut sum = PrfScores { precision: 0.0, recall: 0.0, f1: 0.0 };
                    for trial in 0..spec.trials {
                        let pred = random_detector(
                            case.ground_truth.len(),
                            spec.p,
                            trial_seed(spec.base_seed, trial),
                        )?;
                        let s = registry
                            .evaluate(name, &case.ground_truth, &pred, &config)?
                            .scores;
                        sum.precision += s.precision;
                        sum.recall += s.recall;
                        sum.f1 += s.f1;
                    }
                    let n = spec.trials as f64;
                    PrfScores {
                        precision: sum.precision / n,
                        recall: sum.recall / n,
                        f1: sum.f1 / n,
                    }
                }
            };
            results.insert(name.to_owned(), scores);
        }
        rows.push(MatrixRow {
            scenario_name: case.scenario_name.clone(),
            case_name: case.case_name.clone(),
            stochastic: case.stochastic.is_some(),
            results,
        });
    }
    Ok(ScenarioMatrix {
        evaluators: evaluators.iter().map(|&s| s.to_owned()).collect(),
        rows,
    })
}

/// One characteristic check result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicVerdict {
    /// What was checked.
    pub characteristic: Characteristic,
    /// What the scores showed.
    pub verdict: Verdict,
}

/// All characteristic verdicts for one evaluator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluatorProfile {
    /// Evaluator name.
    pub evaluator: String,
    /// Verdicts in [`Characteristic::all`] order.
    pub verdicts: Vec<CharacteristicVerdict>,
}

impl EvaluatorProfile {
    /// Looks up one verdict.
    pub fn verdict(&self, characteristic: Characteristic) -> Option<Verdict> {
        self.verdicts
            .iter()
            .find(|v| v.characteristic == characteristic)
            .map(|v| v.verdict)
    }
}

/// Applies the decision rules to a computed matrix, one profile per matrix
/// evaluator (in column order).
///
/// The existence-detection rule compares against pointwise scores, so the
/// matrix must include the `pw` evaluator.
pub fn characteristic_verdicts(matrix: &ScenarioMatrix) -> Result<Vec<EvaluatorProfile>> {
    if !matrix.evaluators.iter().any(|e| e == "pw") {
        return Err(OiprError::MatrixIncomplete(
            "the existence-detection rule needs pw results in the matrix".to_owned(),
        ));
    }
    matrix
        .evaluators
        .iter()
        .map(|name| {
            let verdicts = Characteristic::all()
                .into_iter()
                .map(|characteristic| {
                    Ok(CharacteristicVerdict {
                        characteristic,
                        verdict: decide(matrix, name, characteristic)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(EvaluatorProfile {
                evaluator: name.clone(),
                verdicts,
            })
        })
        .collect()
}

fn gt(a: f64, b: f64) -> bool {
    a > b + EPS
}

fn decide(matrix: &ScenarioMatrix, evaluator: &str, c: Characteristic) -> Result<Verdict> {
    let f1 = |scenario: &str, case: &str| -> Result<f64> {
        Ok(matrix.scores(scenario, case, evaluator)?.f1)
    };
    let verdict = match c {
        Characteristic::ExistenceDetectionReward => {
            // More credit than the plain overlap share: beat pointwise on
            // the first-point-only case, or at least on the 52% case.
            let pw_c1 = matrix.scores("overlap_proportion", "c1", "pw")?.f1;
            let pw_c3 = matrix.scores("overlap_proportion", "c3", "pw")?.f1;
            if gt(f1("overlap_proportion", "c1")?, pw_c1) {
                Verdict::Present
            } else if gt(f1("overlap_proportion", "c3")?, pw_c3) {
                Verdict::Piecewise
            } else {
                Verdict::Absent
            }
        }
        Characteristic::OverlapProportionAwareness => {
            let scores: Vec<f64> = ["c1", "c2", "c3", "c4"]
                .iter()
                .map(|case| f1("overlap_proportion", case))
                .collect::<Result<_>>()?;
            let strict_rises: Vec<bool> =
                scores.windows(2).map(|w| gt(w[1], w[0])).collect();
            if strict_rises.iter().all(|&r| r) {
                Verdict::Present
            } else if strict_rises.iter().any(|&r| r) {
                Verdict::Piecewise
            } else {
                Verdict::Absent
            }
        }
        Characteristic::FragmentedResultsPenalty => {
            // Same 20 detected points, more fragments: recall must drop.
            let c2 = matrix.scores("fragmented_tps", "c2", evaluator)?.recall;
            let c3 = matrix.scores("fragmented_tps", "c3", evaluator)?.recall;
            if gt(c2, c3) {
                Verdict::Present
            } else {
                Verdict::Absent
            }
        }
        Characteristic::FragmentsMerging => {
            // Aggregated or continuous FPs must cost significantly less
            // than the same number of dispersed FPs.
            let dispersed = f1("fragmented_fps", "c1")?;
            let aggregated = f1("fragmented_fps", "c2")?;
            let continuous = f1("fragmented_fps", "c3")?;
            if aggregated - dispersed > SIGNIFICANT_GAP
                && continuous - dispersed > SIGNIFICANT_GAP
            {
                Verdict::Present
            } else {
                Verdict::Absent
            }
        }
        Characteristic::AmbiguousLabelHandling => {
            if gt(f1("temporal_shifting", "c1")?, 0.0) && gt(f1("temporal_shifting", "c2")?, 0.0)
            {
                Verdict::Present
            } else {
                Verdict::Absent
            }
        }
        Characteristic::EarlyDetectionReward => {
            let first = f1("tp_positions", "c1")?;
            let middle = f1("tp_positions", "c2")?;
            let last = f1("tp_positions", "c3")?;
            if gt(first, middle) && gt(middle, last) {
                Verdict::Present
            } else {
                Verdict::Absent
            }
        }
        Characteristic::FragmentationMisleadingPrecision => {
            let contiguous = matrix.scores("fragmented_tps", "c1", evaluator)?.precision;
            let three = matrix.scores("fragmented_tps", "c2", evaluator)?.precision;
            let ten = matrix.scores("fragmented_tps", "c3", evaluator)?.precision;
            if gt(three, contiguous) && gt(ten, contiguous) {
                Verdict::Present
            } else {
                Verdict::Absent
            }
        }
        Characteristic::LongAnomalyMisleading => {
            // Misleading when one 10-point event outscores six 1-point
            // events; merely mitigated when it no longer dominates but
            // still beats the event-proportional baseline.
            let long_only = f1("long_anomaly_effect", "c1")?;
            let short_only = f1("long_anomaly_effect", "c2")?;
            if gt(long_only, short_only) {
                Verdict::Present
            } else if gt(long_only, EVENT_PROPORTIONAL_F1) {
                Verdict::Mitigated
            } else {
                Verdict::Absent
            }
        }
        Characteristic::SparseAnomalyMisleading => {
            // Misleading when adding a false positive raises the score.
            if gt(f1("sparse_anomalies", "c2")?, f1("sparse_anomalies", "c1")?) {
                Verdict::Present
            } else {
                Verdict::Absent
            }
        }
    };
    Ok(verdict)
}

/// Text rendering of the verdict table: one row per characteristic, one
/// column per evaluator.
pub fn render_verdicts(profiles: &[EvaluatorProfile]) -> String {
    let mut out = String::new();
    out.push_str(&format!("{:<40}", "characteristic"));
    for profile in profiles {
        out.push_str(&format!(" {:<12}", profile.evaluator));
    }
    out.push('\n');
    for characteristic in Characteristic::all() {
        let mut label = characteristic.label().to_owned();
        if characteristic.is_failure_mode() {
            label.push_str(" (!)");
        }
        out.push_str(&format!("{label:<40}"));
        for profile in profiles {
            let symbol = profile
                .verdict(characteristic)
                .map(|v| v.symbol(characteristic.is_failure_mode()))
                .unwrap_or("?");
            out.push_str(&format!(" {symbol:<12}"));
        }
        out.push('\n');
    }
    out.push_str("(!) failure mode: ◦ = present (bad), − = absent (good)\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::build_all_scenarios;

    fn deterministic_matrix() -> ScenarioMatrix {
        let cases: Vec<ScenarioCase> = build_all_scenarios(0)
            .expect("builds")
            .into_iter()
            .filter(|c| c.stochastic.is_none())
            .collect();
        scenario_matrix(
            &EvaluatorRegistry::builtin(),
            &["pw", "pa", "pak", "oipr"],
            &cases,
        )
        .expect("all evaluators known")
    }

    #[test]
    fn verdict_table_matches_published_profiles() {
        use Verdict::{Absent, Mitigated, Piecewise, Present};
        let profiles =
            characteristic_verdicts(&deterministic_matrix()).expect("matrix complete");
        let by_name: BTreeMap<&str, &EvaluatorProfile> =
            profiles.iter().map(|p| (p.evaluator.as_str(), p)).collect();

        let expect = |name: &str, verdicts: [Verdict; 9]| {
            let profile = by_name[name];
            for (characteristic, want) in Characteristic::all().into_iter().zip(verdicts) {
                assert_eq!(
                    profile.verdict(characteristic),
                    Some(want),
                    "{name} / {}",
                    characteristic.label()
                );
            }
        };

        expect("pw", [
            Absent, Present, Absent, Absent, Absent, Absent, Absent, Present, Absent,
        ]);
        expect("pa", [
            Present, Absent, Absent, Absent, Absent, Absent, Absent, Present, Absent,
        ]);
        expect("pak", [
            Piecewise, Piecewise, Absent, Absent, Absent, Absent, Absent, Present, Absent,
        ]);
        expect("oipr", [
            Present, Present, Present, Present, Present, Present, Absent, Mitigated, Absent,
        ]);
    }

    #[test]
    fn verdicts_require_pointwise_scores() {
        let cases: Vec<ScenarioCase> = build_all_scenarios(0)
            .expect("builds")
            .into_iter()
            .filter(|c| c.stochastic.is_none())
            .collect();
        let matrix = scenario_matrix(&EvaluatorRegistry::builtin(), &["oipr"], &cases)
            .expect("evaluates");
        assert!(matches!(
            characteristic_verdicts(&matrix),
            Err(OiprError::MatrixIncomplete(_))
        ));
    }

    #[test]
    fn matrix_lookup_reports_missing_cases() {
        let matrix = ScenarioMatrix {
            evaluators: vec!["pw".to_owned()],
            rows: Vec::new(),
        };
        assert!(matches!(
            characteristic_verdicts(&matrix),
            Err(OiprError::MatrixIncomplete(_))
        ));
    }

    #[test]
    fn symbols_distinguish_benefit_from_failure() {
        assert_eq!(Verdict::Present.symbol(false), "✓");
        assert_eq!(Verdict::Absent.symbol(false), "×");
        assert_eq!(Verdict::Present.symbol(true), "◦");
        assert_eq!(Verdict::Absent.symbol(true), "−");
        assert_eq!(Verdict::Mitigated.symbol(true), "*mitigated");
    }

    #[test]
    fn rendering_includes_rows_and_symbols() {
        let profiles =
            characteristic_verdicts(&deterministic_matrix()).expect("matrix complete");
        let text = render_verdicts(&profiles);
        assert!(text.contains("long anomaly misleading"));
        assert!(text.contains("*mitigated"));
        assert!(text.contains("✓"));

        let matrix = deterministic_matrix();
        let table = matrix.to_table();
        assert!(table.contains("overlap_proportion"));
        assert!(table.contains("1.000/1.000/1.000"));
    }
}

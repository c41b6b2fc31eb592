// SPDX-License-Identifier: MIT OR Apache-2.0

//! Command-line front end: evaluate label pairs, generate the benchmark
//! dataset and adversarial predictions, export interest curves, and print
//! characteristic verdicts.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use oipr::characteristics::{characteristic_verdicts, render_verdicts, scenario_matrix};
use oipr::datagen::{
    aggregated_disturbance_detector, build_all_scenarios, continuous_disturbance_detector,
    dispersed_disturbance_detector, first_point_detector, long_event_detector, random_detector,
    scenario_names, trial_seed, DisturbanceConfig, ScenarioCase,
};
use oipr::interest::{build_interest_curve, OiprParams};
use oipr::io::{
    detect_format, read_labels, write_curve, write_labels, write_report, EvalReport, LabelFormat,
    ReportFormat,
};
use oipr::labels::LabelSeries;
use oipr::metrics::{EvalConfig, EvaluatorRegistry};

/// Built-in evaluator names in report column order.
const BUILTIN_COLUMNS: [&str; 4] = ["pw", "pa", "pak", "oipr"];

#[derive(Parser)]
#[command(
    name = "oipr",
    version,
    about = "Operator-interest evaluation for time-series anomaly detection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score a prediction against ground truth with the selected evaluators.
    Evaluate(EvaluateArgs),
    /// Generate the benchmark scenario dataset and its evaluation matrix.
    Scenarios(ScenariosArgs),
    /// Print the characteristic verdict table for the built-in evaluators.
    Characteristics(CharacteristicsArgs),
    /// Generate the adversarial detector predictions for a ground truth.
    Adversarial(AdversarialArgs),
    /// Export the interest curve of a label series as CSV.
    Curve(CurveArgs),
}

/// Label file encodings selectable on the command line.
#[derive(Debug, Clone, Copy, ValueEnum)]
enum LabelFormatArg {
    Csv,
    Json,
}

impl From<LabelFormatArg> for LabelFormat {
    fn from(arg: LabelFormatArg) -> Self {
        match arg {
            LabelFormatArg::Csv => LabelFormat::Csv,
            LabelFormatArg::Json => LabelFormat::Json,
        }
    }
}

/// Report encodings selectable on the command line.
#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
}

impl From<OutputFormat> for ReportFormat {
    fn from(arg: OutputFormat) -> Self {
        match arg {
            OutputFormat::Table => ReportFormat::Table,
            OutputFormat::Json => ReportFormat::Json,
        }
    }
}

#[derive(clap::Args)]
struct EvaluateArgs {
    /// Ground-truth label file (CSV or JSON).
    #[arg(long)]
    gt: PathBuf,
    /// Prediction label file (CSV or JSON).
    #[arg(long)]
    pred: PathBuf,
    /// Force the label encoding instead of detecting it per file extension.
    #[arg(long, value_enum)]
    label_format: Option<LabelFormatArg>,
    /// Evaluators to run, by registry name.
    #[arg(long, value_delimiter = ',', default_value = "pw,pa,pak,oipr")]
    evaluators: Vec<String>,
    /// Qualification threshold (percent) for partial point adjustment.
    #[arg(long, default_value_t = 50.0)]
    k: f64,
    /// Disturbance-phase length; derived from the ground truth when absent.
    #[arg(long)]
    l_dis: Option<usize>,
    /// Observation-phase length; derived from the ground truth when absent.
    #[arg(long)]
    l_obs: Option<usize>,
    /// Long-term interest plateau; derived default 0.5 when absent.
    #[arg(long)]
    b_dur: Option<f64>,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report encoding.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(clap::Args)]
struct ScenariosArgs {
    /// Directory receiving the dataset files and matrix reports.
    #[arg(long, env = "OIPR_OUT_DIR")]
    out_dir: PathBuf,
    /// Master seed for the stochastic cases.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(clap::Args)]
struct CharacteristicsArgs {
    /// Master seed used when materializing the benchmark cases.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the verdicts to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Verdict encoding.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(clap::Args)]
struct AdversarialArgs {
    /// Ground-truth label file (CSV or JSON).
    #[arg(long)]
    gt: PathBuf,
    /// Force the label encoding instead of detecting it per file extension.
    #[arg(long, value_enum)]
    label_format: Option<LabelFormatArg>,
    /// Minimum event length kept by the long-event detector.
    #[arg(long)]
    long_threshold: usize,
    /// Fraction of the series length inserted as false positives.
    #[arg(long, default_value_t = 0.01)]
    fp_rate: f64,
    /// Fraction of the series prefix receiving clustered disturbance.
    #[arg(long, default_value_t = 0.03)]
    head_fraction: f64,
    /// Seed for false-positive placement.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory receiving the prediction files.
    #[arg(long, env = "OIPR_OUT_DIR")]
    out_dir: PathBuf,
}

#[derive(clap::Args)]
struct CurveArgs {
    /// Label file to transform (CSV or JSON).
    #[arg(long)]
    labels: PathBuf,
    /// Force the label encoding instead of detecting it per file extension.
    #[arg(long, value_enum)]
    label_format: Option<LabelFormatArg>,
    /// Disturbance-phase length; derived from the labels when absent.
    #[arg(long)]
    l_dis: Option<usize>,
    /// Observation-phase length; derived from the labels when absent.
    #[arg(long)]
    l_obs: Option<usize>,
    /// Long-term interest plateau; derived default 0.5 when absent.
    #[arg(long)]
    b_dur: Option<f64>,
    /// Output CSV path.
    #[arg(long)]
    output: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Scenarios(args) => cmd_scenarios(args),
        Command::Characteristics(args) => cmd_characteristics(args),
        Command::Adversarial(args) => cmd_adversarial(args),
        Command::Curve(args) => cmd_curve(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_evaluate(args: EvaluateArgs) -> anyhow::Result<()> {
    let gt = read_label_file(&args.gt, args.label_format)?;
    let pred = read_label_file(&args.pred, args.label_format)?;
    if gt.len() != pred.len() {
        bail!(
            "length mismatch: ground truth has {} points but prediction has {}",
            gt.len(),
            pred.len()
        );
    }

    let params = resolve_param_overrides(&gt, args.l_dis, args.l_obs, args.b_dur)?;
    let config = EvalConfig {
        params,
        k_percent: args.k,
        ..EvalConfig::default()
    };

    let registry = EvaluatorRegistry::builtin();
    let mut evaluations = Vec::new();
    let mut failures = Vec::new();
    for name in &args.evaluators {
        match registry.evaluate(name, &gt, &pred, &config) {
            Ok(evaluation) => evaluations.push(evaluation),
            Err(err) => failures.push((name.clone(), err)),
        }
    }

    if !evaluations.is_empty() {
        let report = EvalReport::new(&gt, &pred, &config, evaluations);
        let bytes = write_report(&report, args.format.into())?;
        emit(args.output.as_deref(), &bytes)?;
    }
    if !failures.is_empty() {
        for (name, err) in &failures {
            eprintln!("{name}: {err}");
        }
        bail!("{} of {} evaluators failed", failures.len(), args.evaluators.len());
    }
    Ok(())
}

fn cmd_scenarios(args: ScenariosArgs) -> anyhow::Result<()> {
    let cases = build_all_scenarios(args.seed)?;
    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;

    let mut n_cases = 0;
    let mut n_trials = 0;
    for scenario in scenario_names() {
        let dir = args.out_dir.join(scenario);
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut entries = Vec::new();
        for case in cases.iter().filter(|c| c.scenario_name == scenario) {
            entries.push(write_case(&dir, case, &mut n_trials)?);
            n_cases += 1;
        }
        let manifest = serde_json::json!({ "scenario": scenario, "cases": entries });
        let text = serde_json::to_string_pretty(&manifest)? + "\n";
        write_atomic(&dir.join("scenario.json"), text.as_bytes())?;
    }

    let registry = EvaluatorRegistry::builtin();
    let matrix = scenario_matrix(&registry, &BUILTIN_COLUMNS, &cases)?;
    let json = serde_json::to_string_pretty(&matrix)? + "\n";
    write_atomic(&args.out_dir.join("matrix.json"), json.as_bytes())?;
    write_atomic(&args.out_dir.join("matrix.txt"), matrix.to_table().as_bytes())?;

    println!(
        "wrote {} cases ({} trial predictions) across {} scenarios to {}",
        n_cases,
        n_trials,
        scenario_names().len(),
        args.out_dir.display()
    );
    println!("matrix report: matrix.json, matrix.txt");
    Ok(())
}

/// Writes one case's label files (plus trial predictions for stochastic
/// cases) and returns its manifest entry.
fn write_case(
    dir: &Path,
    case: &ScenarioCase,
    n_trials: &mut usize,
) -> anyhow::Result<serde_json::Value> {
    let gt_name = format!("{}_gt.csv", case.case_name);
    let pred_name = format!("{}_pred.csv", case.case_name);
    write_labels_atomic(&dir.join(&gt_name), &case.ground_truth)?;
    write_labels_atomic(&dir.join(&pred_name), &case.prediction)?;

    let stochastic = match case.stochastic {
        Some(spec) => {
            let mut trial_files = Vec::with_capacity(spec.trials);
            for trial in 0..spec.trials {
                let name = format!("{}_trial_{trial:03}_pred.csv", case.case_name);
                let pred =
                    random_detector(case.ground_truth.len(), spec.p, trial_seed(spec.base_seed, trial))?;
                write_labels_atomic(&dir.join(&name), &pred)?;
                trial_files.push(name);
                *n_trials += 1;
            }
            serde_json::json!({
                "base_seed": spec.base_seed,
                "trials": spec.trials,
                "p": spec.p,
                "trial_files": trial_files,
            })
        }
        None => serde_json::Value::Null,
    };

    Ok(serde_json::json!({
        "case": case.case_name,
        "description": case.description,
        "n_points": case.ground_truth.len(),
        "params": case.params,
        "ground_truth": gt_name,
        "prediction": pred_name,
        "stochastic": stochastic,
    }))
}

fn cmd_characteristics(args: CharacteristicsArgs) -> anyhow::Result<()> {
    // The verdict rules consult only the deterministic cases.
    let cases: Vec<ScenarioCase> = build_all_scenarios(args.seed)?
        .into_iter()
        .filter(|case| case.stochastic.is_none())
        .collect();
    let registry = EvaluatorRegistry::builtin();
    let matrix = scenario_matrix(&registry, &BUILTIN_COLUMNS, &cases)?;
    let profiles = characteristic_verdicts(&matrix)?;
    let bytes = match args.format {
        OutputFormat::Table => render_verdicts(&profiles).into_bytes(),
        OutputFormat::Json => (serde_json::to_string_pretty(&profiles)? + "\n").into_bytes(),
    };
    emit(args.output.as_deref(), &bytes)
}

fn cmd_adversarial(args: AdversarialArgs) -> anyhow::Result<()> {
    let gt = read_label_file(&args.gt, args.label_format)?;
    let cfg = DisturbanceConfig {
        fp_rate: args.fp_rate,
        head_fraction: args.head_fraction,
        seed: args.seed,
    };
    let detectors: Vec<(&str, oipr::Result<LabelSeries>)> = vec![
        ("d_fp", Ok(first_point_detector(&gt))),
        ("d_long", long_event_detector(&gt, args.long_threshold)),
        ("d_disp", dispersed_disturbance_detector(&gt, &cfg)),
        ("d_aggr", aggregated_disturbance_detector(&gt, &cfg)),
        ("d_cont", continuous_disturbance_detector(&gt, &cfg)),
    ];

    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    let total = detectors.len();
    let mut failures = Vec::new();
    for (name, result) in detectors {
        match result {
            Ok(pred) => {
                let path = args.out_dir.join(format!("{name}.csv"));
                write_labels_atomic(&path, &pred)?;
                println!("wrote {}", path.display());
            }
            Err(err) => failures.push((name, err)),
        }
    }
    if !failures.is_empty() {
        for (name, err) in &failures {
            eprintln!("{name}: {err}");
        }
        bail!("{} of {total} predictions failed", failures.len());
    }
    Ok(())
}

fn cmd_curve(args: CurveArgs) -> anyhow::Result<()> {
    let labels = read_label_file(&args.labels, args.label_format)?;
    let params = match resolve_param_overrides(&labels, args.l_dis, args.l_obs, args.b_dur)? {
        Some(params) => params,
        None => OiprParams::derived_from(&labels)?,
    };
    let curve = build_interest_curve(&labels, &params);

    let tmp = tmp_sibling(&args.output);
    write_curve(&tmp, &curve)?;
    fs::rename(&tmp, &args.output)
        .with_context(|| format!("replacing {}", args.output.display()))?;
    println!(
        "wrote {} samples (l_dis={} l_obs={} b_dur={}) to {}",
        curve.len(),
        params.l_dis,
        params.l_obs,
        params.b_dur,
        args.output.display()
    );
    Ok(())
}

/// Reads a label file, detecting the encoding from the extension unless
/// one was forced.
fn read_label_file(path: &Path, forced: Option<LabelFormatArg>) -> anyhow::Result<LabelSeries> {
    let format = match forced {
        Some(arg) => arg.into(),
        None => detect_format(path)?,
    };
    Ok(read_labels(path, format)?)
}

/// Resolves `--l-dis`/`--l-obs`/`--b-dur`: `None` when nothing was given
/// (each evaluator then derives defaults itself), otherwise a full parameter
/// set with unspecified components derived from the ground truth.
fn resolve_param_overrides(
    gt: &LabelSeries,
    l_dis: Option<usize>,
    l_obs: Option<usize>,
    b_dur: Option<f64>,
) -> anyhow::Result<Option<OiprParams>> {
    let resolved = match (l_dis, l_obs, b_dur) {
        (None, None, None) => return Ok(None),
        (Some(l_dis), Some(l_obs), Some(b_dur)) => OiprParams::new(l_dis, l_obs, b_dur)?,
        (l_dis, l_obs, b_dur) => {
            let base = OiprParams::derived_from(gt)
                .context("cannot derive defaults for the unspecified curve parameters")?;
            OiprParams::new(
                l_dis.unwrap_or(base.l_dis),
                l_obs.unwrap_or(base.l_obs),
                b_dur.unwrap_or(base.b_dur),
            )?
        }
    };
    Ok(Some(resolved))
}

/// Writes to the given file (atomically) or to stdout.
fn emit(path: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match path {
        Some(path) => {
            write_atomic(path, bytes)?;
            println!("wrote {}", path.display());
        }
        None => std::io::stdout()
            .write_all(bytes)
            .context("writing to stdout")?,
    }
    Ok(())
}

/// A `.tmp` sibling used to stage a file before renaming it into place.
fn tmp_sibling(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_owned();
    name.push(".tmp");
    path.with_file_name(name)
}

/// Writes bytes to a sibling temp file and renames it into place, so other
/// processes never observe a partially written file.
fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let tmp = tmp_sibling(path);
    fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("replacing {}", path.display()))?;
    Ok(())
}

/// Stages a label series through a temp file and renames it into place.
fn write_labels_atomic(path: &Path, series: &LabelSeries) -> anyhow::Result<()> {
    let tmp = tmp_sibling(path);
    write_labels(&tmp, series, LabelFormat::Csv)
        .with_context(|| format!("writing {}", path.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("replacing {}", path.display()))?;
    Ok(())
}

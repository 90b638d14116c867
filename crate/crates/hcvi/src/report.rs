//! Machine-readable result emission.
//!
//! A sweep run serializes to a JSON document with a stable key set:
//! `config` (flag echo), `granulation` (ball counts and threshold), `sweep`
//! (`rows[]`, `optimal_l`, bound info), `baselines` (per-row classic
//! scores), and `timings` (`null` when suppressed). The csv-curve format is
//! a plot-ready table: one row per candidate, normalized score plus the
//! baseline columns.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::granulation::Granulation;
use crate::sweep::SweepReport;

/// Echo of every flag that shaped a run; serializing it alongside the
/// results makes any output self-describing and reproducible.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub command: String,
    pub input: Option<String>,
    pub has_header: bool,
    pub label_column: Option<usize>,
    pub labels: Vec<String>,
    pub bd_threshold_fraction: f64,
    pub noise_min_points: usize,
    pub l_max: Option<usize>,
    pub clusterer: Option<String>,
    pub seed: u64,
    pub restarts: Option<usize>,
    pub format: String,
    pub output: Option<String>,
    pub no_timings: bool,
}

/// Granulation counts and the threshold actually used.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GranulationSummary {
    pub n_points: usize,
    pub dim: usize,
    /// Ball count after noise removal.
    pub m: usize,
    pub noise_ball_count: usize,
    pub noise_point_count: usize,
    pub bd_threshold: f64,
    pub bd_threshold_fraction: f64,
    pub root_radius_max: f64,
}

impl GranulationSummary {
    pub fn new(granulation: &Granulation, dim: usize, bd_threshold_fraction: f64) -> Self {
        Self {
            n_points: granulation.n_points,
            dim,
            m: granulation.m(),
            noise_ball_count: granulation.noise_balls.len(),
            noise_point_count: granulation.noise_point_count(),
            bd_threshold: granulation.bd_threshold,
            bd_threshold_fraction,
            root_radius_max: granulation.root_radius_max,
        }
    }
}

/// Wall-clock milliseconds for the pipeline stages.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Timings {
    pub granulate_ms: f64,
    pub sweep_ms: f64,
    pub total_ms: f64,
}

/// Classic scores for one sweep row, pulled up to the top level of the
/// document so plotting tools need not dig through `sweep.rows`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BaselineRow {
    pub l: usize,
    pub source: Option<String>,
    pub silhouette: Option<f64>,
    pub davies_bouldin: Option<f64>,
    pub calinski_harabasz: Option<f64>,
}

/// Everything a sweep run produced.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunResult {
    pub config: ConfigEcho,
    pub granulation: GranulationSummary,
    pub sweep: SweepReport,
    pub baselines: Vec<BaselineRow>,
    pub timings: Option<Timings>,
}

impl RunResult {
    /// Assemble the result, deriving the baseline table from the sweep rows.
    pub fn new(
        config: ConfigEcho,
        granulation: GranulationSummary,
        sweep: SweepReport,
        timings: Option<Timings>,
    ) -> Self {
        let baselines = sweep
            .rows
            .iter()
            .map(|row| BaselineRow {
                l: row.l,
                source: row.source.clone(),
                silhouette: row.baselines.map(|b| b.silhouette),
                davies_bouldin: row.baselines.map(|b| b.davies_bouldin),
                calinski_harabasz: row.baselines.map(|b| b.calinski_harabasz),
            })
            .collect();
        Self {
            config,
            granulation,
            sweep,
            baselines,
            timings,
        }
    }
}

/// Machine-readable output formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Json,
    CsvCurve,
}

/// Render a run result in the requested format.
pub fn emit_result(result: &RunResult, format: EmitFormat) -> Result<String> {
    match format {
        EmitFormat::Json => {
            let mut text = serde_json::to_string_pretty(result)?;
            text.push('\n');
            Ok(text)
        }
        EmitFormat::CsvCurve => Ok(csv_curve(result)),
    }
}

fn opt(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

/// One row per candidate: `l`, the normalized score, then the baselines.
/// Invalid candidates keep their row with empty score cells.
fn csv_curve(result: &RunResult) -> String {
    let mut out = String::from("l,normalized_avg_hcvi,silhouette,davies_bouldin,calinski_harabasz\n");
    for row in &result.sweep.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            row.l,
            opt(row.normalized),
            opt(row.baselines.map(|b| b.silhouette)),
            opt(row.baselines.map(|b| b.davies_bouldin)),
            opt(row.baselines.map(|b| b.calinski_harabasz)),
        );
    }
    out
}

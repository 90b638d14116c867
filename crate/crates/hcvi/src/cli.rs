//! Command-line front door. The binary stays thin: flags are parsed here,
//! mapped onto library calls, and results are printed in a human table or
//! emitted machine-readable through [`crate::report`].

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::baselines::{baseline_indices, BaselineScores};
use crate::dataset::{load_csv, load_labels, write_csv, write_labels, Dataset};
use crate::error::{Error, Result};
use crate::geometry::HyperBall;
use crate::granulation::{granulate, GranulationConfig};
use crate::index::{assign_balls, hcvi_for_l, ClusterScore};
use crate::report::{
    emit_result, ConfigEcho, EmitFormat, GranulationSummary, RunResult, Timings,
};
use crate::sweep::{densify_labels, run_sweep, ClustererMode, LabelSet, SweepConfig, SweepReport};
use crate::synth::{generate_synthetic, SynthSpec};

#[derive(Debug, Parser)]
#[command(
    name = "hcvi",
    about = "Granulate a dataset into hyper-balls, score clusterings, and find the optimal cluster count"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Granulate a dataset and emit the hyper-balls.
    Granulate(GranulateArgs),
    /// Score one externally supplied labeling of a dataset.
    Evaluate(EvaluateArgs),
    /// Sweep candidate cluster counts and report the optimal one.
    Sweep(SweepArgs),
    /// Generate synthetic fixture datasets.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Comma-delimited numeric input file.
    #[arg(long)]
    pub input: PathBuf,
    /// Treat the first non-blank line as a header row.
    #[arg(long)]
    pub has_header: bool,
    /// 0-based column holding integer labels instead of coordinates.
    #[arg(long)]
    pub label_column: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GranulationArgs {
    /// Balance-degree stop threshold as a fraction of the root ball radius.
    #[arg(long, default_value_t = 0.05)]
    pub bd_threshold_fraction: f64,
    /// Balls with fewer members than this are removed as noise.
    #[arg(long, default_value_t = 4)]
    pub noise_min_points: usize,
    /// Seed for all randomized choices.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl GranulationArgs {
    fn to_config(&self) -> GranulationConfig {
        GranulationConfig {
            bd_threshold_fraction: self.bd_threshold_fraction,
            noise_min_points: self.noise_min_points,
            seed: self.seed,
            ..GranulationConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    pub format: FormatArg,
    /// Write the document here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Suppress wall-clock timings for reproducible output.
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Human,
    Json,
    CsvCurve,
}

impl FormatArg {
    fn name(self) -> &'static str {
        match self {
            FormatArg::Human => "human",
            FormatArg::Json => "json",
            FormatArg::CsvCurve => "csv-curve",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClustererArg {
    KmeansOnBalls,
    KmeansOnPoints,
    ExternalLabels,
}

impl ClustererArg {
    fn name(self) -> &'static str {
        match self {
            ClustererArg::KmeansOnBalls => "kmeans-on-balls",
            ClustererArg::KmeansOnPoints => "kmeans-on-points",
            ClustererArg::ExternalLabels => "external-labels",
        }
    }
}

#[derive(Debug, Args)]
pub struct GranulateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub granulation: GranulationArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Sidecar label file, one integer per line (-1 = no cluster).
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[command(flatten)]
    pub granulation: GranulationArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub granulation: GranulationArgs,
    /// How candidate clusterings are produced.
    #[arg(long, value_enum, default_value_t = ClustererArg::KmeansOnBalls)]
    pub clusterer: ClustererArg,
    /// Label file per candidate (repeatable); external-labels mode only.
    #[arg(long)]
    pub labels: Vec<PathBuf>,
    /// Override the floor(sqrt(m)) upper bound on the cluster count.
    #[arg(long)]
    pub l_max: Option<usize>,
    /// K-means restarts per candidate.
    #[arg(long, default_value_t = 10)]
    pub restarts: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[command(subcommand)]
    pub kind: SynthKind,
}

#[derive(Debug, Subcommand)]
pub enum SynthKind {
    /// Isotropic Gaussian blobs on a separation-scaled grid.
    Blobs {
        #[arg(long, default_value_t = 4)]
        clusters: usize,
        #[arg(long, default_value_t = 125)]
        points_per: usize,
        #[arg(long, default_value_t = 1.0)]
        spread: f64,
        #[arg(long, default_value_t = 10.0)]
        separation: f64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Add this fraction of uniform background noise (labeled -1).
        #[arg(long, default_value_t = 0.0)]
        noise_fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the points here (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write ground-truth labels here, one per line.
        #[arg(long)]
        labels_out: Option<PathBuf>,
    },
    /// Concentric rings around the origin.
    Rings {
        #[arg(long, default_value_t = 200)]
        points_per: usize,
        /// Ring radii, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 3.0])]
        radii: Vec<f64>,
        #[arg(long, default_value_t = 0.05)]
        jitter: f64,
        /// Add this fraction of uniform background noise (labeled -1).
        #[arg(long, default_value_t = 0.0)]
        noise_fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the points here (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write ground-truth labels here, one per line.
        #[arg(long)]
        labels_out: Option<PathBuf>,
    },
}

/// `granulate` output document.
#[derive(Debug, Serialize, Deserialize)]
pub struct GranulateResult {
    pub config: ConfigEcho,
    pub granulation: GranulationSummary,
    pub balls: Vec<HyperBall>,
    pub noise_balls: Vec<HyperBall>,
    pub timings: Option<Timings>,
}

/// `evaluate` output document.
#[derive(Debug, Serialize, Deserialize)]
pub struct EvaluateResult {
    pub config: ConfigEcho,
    pub granulation: GranulationSummary,
    pub l: usize,
    pub per_cluster: Vec<ClusterScore>,
    pub avg_hcvi: Option<f64>,
    pub valid: bool,
    pub invalid_reason: Option<String>,
    pub baselines: Option<BaselineScores>,
    pub timings: Option<Timings>,
}

/// Run a parsed command line to completion.
pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Granulate(args) => run_granulate(args),
        Command::Evaluate(args) => run_evaluate(args),
        Command::Sweep(args) => run_sweep_command(args),
        Command::Synth(args) => run_synth(args),
    }
}

fn deliver(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_input(input: &InputArgs) -> Result<(Dataset, Option<Vec<i64>>)> {
    load_csv(&input.input, input.has_header, input.label_column)
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn run_granulate(args: &GranulateArgs) -> Result<()> {
    let total = Instant::now();
    let (dataset, _) = load_input(&args.input)?;
    let config = args.granulation.to_config();
    let start = Instant::now();
    let granulation = granulate(&dataset.points, &config)?;
    let granulate_ms = ms(start);

    let summary = GranulationSummary::new(&granulation, dataset.dim(), config.bd_threshold_fraction);
    let timings = (!args.output.no_timings).then(|| Timings {
        granulate_ms,
        sweep_ms: 0.0,
        total_ms: ms(total),
    });

    match args.output.format {
        FormatArg::Human => {
            let mut text = String::new();
            text.push_str(&human_granulation(&dataset, &summary));
            text.push_str("ball  members  radius_max  radius_avg  balance_degree\n");
            for (i, ball) in granulation.balls.iter().enumerate() {
                text.push_str(&format!(
                    "{i:<5} {:<8} {:<11.6} {:<11.6} {:.6}\n",
                    ball.len(),
                    ball.radius_max,
                    ball.radius_avg,
                    ball.balance_degree
                ));
            }
            text.push_str(&format!("m: {}\n", granulation.m()));
            deliver(&args.output.output, &text)
        }
        FormatArg::Json => {
            let result = GranulateResult {
                config: echo_granulate(args),
                granulation: summary,
                balls: granulation.balls,
                noise_balls: granulation.noise_balls,
                timings,
            };
            let mut text = serde_json::to_string_pretty(&result)?;
            text.push('\n');
            deliver(&args.output.output, &text)
        }
        FormatArg::CsvCurve => Err(Error::InvalidConfig(
            "csv-curve only applies to sweep results".into(),
        )),
    }
}

fn run_evaluate(args: &EvaluateArgs) -> Result<()> {
    let total = Instant::now();
    let (dataset, column_labels) = load_input(&args.input)?;
    let raw_labels = match (&args.labels, column_labels) {
        (Some(path), _) => load_labels(path)?,
        (None, Some(labels)) => labels,
        (None, None) => {
            return Err(Error::InvalidConfig(
                "evaluate needs --labels or --label-column".into(),
            ))
        }
    };
    if raw_labels.len() != dataset.len() {
        return Err(Error::InvalidLabels(format!(
            "got {} labels for {} points",
            raw_labels.len(),
            dataset.len()
        )));
    }
    let (labels, l) = densify_labels(&raw_labels)?;

    let config = args.granulation.to_config();
    let start = Instant::now();
    let granulation = granulate(&dataset.points, &config)?;
    let granulate_ms = ms(start);

    let start = Instant::now();
    let clustering = assign_balls(&granulation, &labels, l)?;
    let report = hcvi_for_l(&granulation.balls, &clustering)?;
    let baselines = baseline_indices(&dataset.points, &labels, l).ok();
    let sweep_ms = ms(start);

    let summary = GranulationSummary::new(&granulation, dataset.dim(), config.bd_threshold_fraction);
    let timings = (!args.output.no_timings).then(|| Timings {
        granulate_ms,
        sweep_ms,
        total_ms: ms(total),
    });

    match args.output.format {
        FormatArg::Human => {
            let mut text = human_granulation(&dataset, &summary);
            text.push_str(&format!("evaluating {l} clusters\n"));
            text.push_str(&human_scores(&report.per_cluster));
            if let Some(b) = baselines {
                text.push_str(&format!(
                    "baselines: silhouette {:.6}, davies_bouldin {:.6}, calinski_harabasz {:.6}\n",
                    b.silhouette, b.davies_bouldin, b.calinski_harabasz
                ));
            }
            match report.avg_hcvi {
                Some(avg) => text.push_str(&format!("avg_hcvi: {avg}\n")),
                None => text.push_str(&format!(
                    "avg_hcvi: undefined ({})\n",
                    report.invalid_reason.as_deref().unwrap_or("invalid")
                )),
            }
            deliver(&args.output.output, &text)
        }
        FormatArg::Json => {
            let result = EvaluateResult {
                config: echo_evaluate(args),
                granulation: summary,
                l,
                per_cluster: report.per_cluster,
                avg_hcvi: report.avg_hcvi,
                valid: report.valid,
                invalid_reason: report.invalid_reason,
                baselines,
                timings,
            };
            let mut text = serde_json::to_string_pretty(&result)?;
            text.push('\n');
            deliver(&args.output.output, &text)
        }
        FormatArg::CsvCurve => Err(Error::InvalidConfig(
            "csv-curve only applies to sweep results".into(),
        )),
    }
}

fn run_sweep_command(args: &SweepArgs) -> Result<()> {
    let total = Instant::now();
    let (dataset, _) = load_input(&args.input)?;
    let config = args.granulation.to_config();
    let start = Instant::now();
    let granulation = granulate(&dataset.points, &config)?;
    let granulate_ms = ms(start);

    let clusterer = match args.clusterer {
        ClustererArg::KmeansOnBalls => ClustererMode::KMeansOnBalls,
        ClustererArg::KmeansOnPoints => ClustererMode::KMeansOnPoints,
        ClustererArg::ExternalLabels => {
            if args.labels.is_empty() {
                return Err(Error::InvalidConfig(
                    "external-labels mode needs at least one --labels file".into(),
                ));
            }
            let mut sets = Vec::with_capacity(args.labels.len());
            for path in &args.labels {
                let labels = load_labels(path)?;
                if labels.len() != dataset.len() {
                    return Err(Error::InvalidLabels(format!(
                        "{}: got {} labels for {} points",
                        path.display(),
                        labels.len(),
                        dataset.len()
                    )));
                }
                sets.push(LabelSet {
                    name: path.display().to_string(),
                    labels,
                });
            }
            ClustererMode::ExternalLabels(sets)
        }
    };
    let sweep_config = SweepConfig {
        clusterer,
        l_max_override: args.l_max,
        seed: args.granulation.seed,
        restarts: args.restarts,
        ..SweepConfig::default()
    };

    let start = Instant::now();
    let sweep = run_sweep(&granulation, &dataset.points, &sweep_config)?;
    let sweep_ms = ms(start);

    let summary = GranulationSummary::new(&granulation, dataset.dim(), config.bd_threshold_fraction);
    let timings = (!args.output.no_timings).then(|| Timings {
        granulate_ms,
        sweep_ms,
        total_ms: ms(total),
    });
    let result = RunResult::new(echo_sweep(args), summary, sweep, timings);

    match args.output.format {
        FormatArg::Human => deliver(&args.output.output, &human_sweep(&dataset, &result)),
        FormatArg::Json => deliver(&args.output.output, &emit_result(&result, EmitFormat::Json)?),
        FormatArg::CsvCurve => deliver(
            &args.output.output,
            &emit_result(&result, EmitFormat::CsvCurve)?,
        ),
    }
}

fn run_synth(args: &SynthArgs) -> Result<()> {
    let (parts, seed, output, labels_out) = match &args.kind {
        SynthKind::Blobs {
            clusters,
            points_per,
            spread,
            separation,
            dim,
            noise_fraction,
            seed,
            output,
            labels_out,
        } => {
            let mut parts = vec![SynthSpec::Blobs {
                clusters: *clusters,
                points_per: *points_per,
                spread: *spread,
                separation: *separation,
                dim: *dim,
            }];
            if *noise_fraction > 0.0 {
                parts.push(SynthSpec::Noise {
                    fraction: *noise_fraction,
                    bounding_box: None,
                });
            }
            (parts, *seed, output, labels_out)
        }
        SynthKind::Rings {
            points_per,
            radii,
            jitter,
            noise_fraction,
            seed,
            output,
            labels_out,
        } => {
            let mut parts = vec![SynthSpec::Rings {
                points_per: *points_per,
                radii: radii.clone(),
                jitter: *jitter,
            }];
            if *noise_fraction > 0.0 {
                parts.push(SynthSpec::Noise {
                    fraction: *noise_fraction,
                    bounding_box: None,
                });
            }
            (parts, *seed, output, labels_out)
        }
    };

    let (dataset, labels) = generate_synthetic(&parts, seed)?;
    match output {
        Some(path) => {
            write_csv(path, &dataset.points)?;
            eprintln!("wrote {} points to {}", dataset.len(), path.display());
        }
        None => print!("{}", crate::dataset::csv_text(&dataset.points)),
    }
    if let Some(path) = labels_out {
        write_labels(path, &labels)?;
        eprintln!("wrote {} labels to {}", labels.len(), path.display());
    }
    Ok(())
}

fn human_granulation(dataset: &Dataset, summary: &GranulationSummary) -> String {
    format!(
        "dataset: {} points, dim {} ({})\n\
         granulation: m = {} balls; {} noise balls ({} points) removed; \
         bd threshold {:.6} = {} x root radius {:.6}\n",
        summary.n_points,
        summary.dim,
        dataset.source,
        summary.m,
        summary.noise_ball_count,
        summary.noise_point_count,
        summary.bd_threshold,
        summary.bd_threshold_fraction,
        summary.root_radius_max,
    )
}

fn human_scores(per_cluster: &[ClusterScore]) -> String {
    let mut text = String::from("cluster  com         sep         hcvi\n");
    for s in per_cluster {
        text.push_str(&format!(
            "{:<8} {:<11.6} {:<11.6} {:.6}\n",
            s.cluster, s.com, s.sep, s.hcvi
        ));
    }
    text
}

fn human_sweep(dataset: &Dataset, result: &RunResult) -> String {
    let mut text = human_granulation(dataset, &result.granulation);
    let sweep: &SweepReport = &result.sweep;
    text.push_str(&format!(
        "sweep l in [{}, {}]{}\n",
        sweep.l_min,
        sweep.l_max,
        if sweep.l_max_overridden {
            " (bound overridden)"
        } else {
            ""
        }
    ));
    text.push_str("l    avg_hcvi      normalized    silhouette   davies_bouldin  calinski_harabasz  source\n");
    for row in &sweep.rows {
        let fmt_opt = |v: Option<f64>| match v {
            Some(v) => format!("{v:<13.6}"),
            None => format!("{:<13}", "-"),
        };
        let (sil, db, ch) = match row.baselines {
            Some(b) => (
                format!("{:<12.6}", b.silhouette),
                format!("{:<15.6}", b.davies_bouldin),
                format!("{:<18.6}", b.calinski_harabasz),
            ),
            None => (
                format!("{:<12}", "-"),
                format!("{:<15}", "-"),
                format!("{:<18}", "-"),
            ),
        };
        text.push_str(&format!(
            "{:<4} {} {} {sil} {db} {ch} {}\n",
            row.l,
            fmt_opt(row.avg_hcvi),
            fmt_opt(row.normalized),
            row.source.as_deref().unwrap_or("-"),
        ));
        if let Some(reason) = &row.invalid_reason {
            text.push_str(&format!("     (invalid: {reason})\n"));
        }
    }
    text.push_str(&format!("optimal_l: {}\n", sweep.optimal_l));
    text
}

fn echo_output(echo: &mut ConfigEcho, args: &OutputArgs) {
    echo.format = args.format.name().to_string();
    echo.output = args.output.as_ref().map(|p| p.display().to_string());
    echo.no_timings = args.no_timings;
}

fn echo_input(echo: &mut ConfigEcho, args: &InputArgs) {
    echo.input = Some(args.input.display().to_string());
    echo.has_header = args.has_header;
    echo.label_column = args.label_column;
}

fn echo_granulation(echo: &mut ConfigEcho, args: &GranulationArgs) {
    echo.bd_threshold_fraction = args.bd_threshold_fraction;
    echo.noise_min_points = args.noise_min_points;
    echo.seed = args.seed;
}

fn echo_granulate(args: &GranulateArgs) -> ConfigEcho {
    let mut echo = ConfigEcho {
        command: "granulate".into(),
        ..ConfigEcho::default()
    };
    echo_input(&mut echo, &args.input);
    echo_granulation(&mut echo, &args.granulation);
    echo_output(&mut echo, &args.output);
    echo
}

fn echo_evaluate(args: &EvaluateArgs) -> ConfigEcho {
    let mut echo = ConfigEcho {
        command: "evaluate".into(),
        ..ConfigEcho::default()
    };
    echo_input(&mut echo, &args.input);
    echo_granulation(&mut echo, &args.granulation);
    echo_output(&mut echo, &args.output);
    if let Some(path) = &args.labels {
        echo.labels = vec![path.display().to_string()];
    }
    echo
}

fn echo_sweep(args: &SweepArgs) -> ConfigEcho {
    let mut echo = ConfigEcho {
        command: "sweep".into(),
        ..ConfigEcho::default()
    };
    echo_input(&mut echo, &args.input);
    echo_granulation(&mut echo, &args.granulation);
    echo_output(&mut echo, &args.output);
    echo.clusterer = Some(args.clusterer.name().to_string());
    echo.labels = args.labels.iter().map(|p| p.display().to_string()).collect();
    echo.l_max = args.l_max;
    echo.restarts = Some(args.restarts);
    echo
}

/// Parse a command line the way the binary does; test hook.
pub fn parse_from<I, T>(args: I) -> Cli
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::parse_from(args)
}

//! Hyper-ball granulation and a cluster-validity index built on it.
//!
//! A dataset is first granulated: starting from one ball over all points,
//! any ball whose balance degree (maximum radius minus average radius)
//! exceeds a threshold is split in two with a deterministic 2-means, and
//! tiny balls are removed as noise. Clusterings of the remaining balls are
//! then scored by the ratio of intracluster compactness to intercluster
//! separation, both measured on ball-to-ball gaps. Sweeping the candidate
//! cluster count from 2 to the square root of the ball count and taking the
//! argmin of the normalized score estimates the optimal number of clusters,
//! robustly against background noise and non-convex cluster shapes.
//!
//! # Quick start
//!
//! ```
//! use hcvi::granulation::{granulate, GranulationConfig};
//! use hcvi::sweep::{run_sweep, SweepConfig};
//! use hcvi::synth::{generate_synthetic, SynthSpec};
//!
//! let (dataset, _truth) = generate_synthetic(
//!     &[SynthSpec::Blobs {
//!         clusters: 4,
//!         points_per: 100,
//!         spread: 1.0,
//!         separation: 15.0,
//!         dim: 2,
//!     }],
//!     7,
//! )
//! .unwrap();
//!
//! let granulation = granulate(&dataset.points, &GranulationConfig::default()).unwrap();
//! let report = run_sweep(&granulation, &dataset.points, &SweepConfig::default()).unwrap();
//! assert_eq!(report.optimal_l, 4);
//! ```
//!
//! # Runnable examples
//!
//! One example per capability, under `examples/`:
//!
//! - **`granulate_blobs`** - granulate a blob dataset and inspect the balls
//! - **`optimal_k_sweep`** - full sweep: score every candidate count, pick the best
//! - **`rings_external_labels`** - score externally supplied labelings of two rings
//! - **`noise_denoising`** - how small noise balls are detected and removed
//! - **`baseline_comparison`** - the ball-level index next to silhouette,
//!   Davies-Bouldin, and Calinski-Harabasz
//! - **`csv_pipeline`** - write a CSV, load it back, evaluate a labeling
//!
//! ```bash
//! cargo run --example optimal_k_sweep
//! cargo run --example rings_external_labels
//! ```
//!
//! The same pipeline is scriptable through the `hcvi` binary
//! (`granulate`, `evaluate`, `sweep`, `synth`); see the README.

pub mod baselines;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod geometry;
pub mod granulation;
pub mod index;
pub mod report;
pub mod sweep;
pub mod synth;

pub use baselines::{baseline_indices, BaselineScores};
pub use dataset::{load_csv, load_labels, Dataset};
pub use error::{Error, Result};
pub use geometry::{
    ball_distance, ball_set_diameter, fit_ball, pairwise_ball_distances, BallDistance,
    DistanceMatrix, HyperBall, Point,
};
pub use granulation::{bisect, granulate, remove_noise, Bisection, Granulation, GranulationConfig};
pub use index::{
    assign_balls, compactness, hcvi_for_l, inter_fallback, intra_fallback, normalize_scores,
    separation, ClusterScore, Clustering, IndexReport,
};
pub use report::{emit_result, EmitFormat, RunResult};
pub use sweep::{
    kmeans, run_sweep, ClustererMode, KMeansResult, LabelSet, SweepConfig, SweepReport, SweepRow,
};
pub use synth::{generate_synthetic, SynthSpec};

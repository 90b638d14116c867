//! Round-trip a dataset through CSV files the way an external pipeline
//! would: write points and a sidecar labeling, load both back, and score
//! the labeling.
//!
//! ```bash
//! cargo run --example csv_pipeline
//! ```

use hcvi::baselines::baseline_indices;
use hcvi::dataset::{load_csv, load_labels, write_csv, write_labels};
use hcvi::granulation::{granulate, GranulationConfig};
use hcvi::index::{assign_balls, hcvi_for_l};
use hcvi::sweep::densify_labels;
use hcvi::synth::{generate_synthetic, SynthSpec};

fn main() -> hcvi::Result<()> {
    let dir = std::env::temp_dir().join("hcvi-csv-pipeline");
    std::fs::create_dir_all(&dir).map_err(|source| hcvi::Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let data_path = dir.join("blobs.csv");
    let label_path = dir.join("blobs.labels");

    let (dataset, truth) = generate_synthetic(
        &[SynthSpec::Blobs {
            clusters: 3,
            points_per: 70,
            spread: 0.8,
            separation: 9.0,
            dim: 2,
        }],
        21,
    )?;
    write_csv(&data_path, &dataset.points)?;
    write_labels(&label_path, &truth)?;
    println!("wrote {} and {}", data_path.display(), label_path.display());

    let (loaded, _) = load_csv(&data_path, false, None)?;
    let raw = load_labels(&label_path)?;
    let (labels, l) = densify_labels(&raw)?;
    println!("loaded {} points in {} dims, {l} labeled clusters", loaded.len(), loaded.dim());

    let granulation = granulate(&loaded.points, &GranulationConfig::default())?;
    let clustering = assign_balls(&granulation, &labels, l)?;
    let report = hcvi_for_l(&granulation.balls, &clustering)?;
    let baselines = baseline_indices(&loaded.points, &labels, l)?;

    println!(
        "\navg_hcvi {:.4} over {} balls; silhouette {:.4}",
        report.avg_hcvi.unwrap(),
        granulation.m(),
        baselines.silhouette,
    );
    Ok(())
}

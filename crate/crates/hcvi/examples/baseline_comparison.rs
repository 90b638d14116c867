//! Put the ball-level index next to the classic point-level scores across
//! the whole candidate sweep. On well-separated blobs all four agree; the
//! interesting cases are elsewhere (see `rings_external_labels`).
//!
//! ```bash
//! cargo run --example baseline_comparison
//! ```

use hcvi::granulation::{granulate, GranulationConfig};
use hcvi::sweep::{run_sweep, SweepConfig};
use hcvi::synth::{generate_synthetic, SynthSpec};

fn main() -> hcvi::Result<()> {
    let (dataset, _) = generate_synthetic(
        &[SynthSpec::Blobs {
            clusters: 4,
            points_per: 100,
            spread: 1.2,
            separation: 14.0,
            dim: 3,
        }],
        11,
    )?;

    let granulation = granulate(&dataset.points, &GranulationConfig::default())?;
    let report = run_sweep(
        &granulation,
        &dataset.points,
        &SweepConfig { seed: 11, ..SweepConfig::default() },
    )?;

    println!("l    avg_hcvi (min wins)  silhouette (max)  davies_bouldin (min)  calinski_harabasz (max)");
    for row in &report.rows {
        let b = row.baselines.expect("k-means rows carry baselines");
        println!(
            "{:<4} {:<20.4} {:<17.4} {:<21.4} {:.1}",
            row.l,
            row.avg_hcvi.unwrap_or(f64::NAN),
            b.silhouette,
            b.davies_bouldin,
            b.calinski_harabasz,
        );
    }
    println!("\noptimal_l by avgHCVI: {}", report.optimal_l);
    Ok(())
}

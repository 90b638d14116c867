//! Sweep candidate cluster counts on a four-blob dataset and let the index
//! pick the optimal one.
//!
//! ```bash
//! cargo run --example optimal_k_sweep
//! ```

use hcvi::granulation::{granulate, GranulationConfig};
use hcvi::sweep::{run_sweep, SweepConfig};
use hcvi::synth::{generate_synthetic, SynthSpec};

fn main() -> hcvi::Result<()> {
    let (dataset, _truth) = generate_synthetic(
        &[SynthSpec::Blobs {
            clusters: 4,
            points_per: 125,
            spread: 1.0,
            separation: 10.0,
            dim: 2,
        }],
        1,
    )?;

    let granulation = granulate(&dataset.points, &GranulationConfig::default())?;
    println!(
        "{} points -> {} balls, sweeping l in [2, {}]",
        dataset.len(),
        granulation.m(),
        granulation.m().isqrt()
    );

    let report = run_sweep(&granulation, &dataset.points, &SweepConfig::default())?;

    println!("\nl    avg_hcvi    normalized");
    for row in &report.rows {
        let marker = if row.l == report.optimal_l { "  <- optimal" } else { "" };
        println!(
            "{:<4} {:<11.6} {:.6}{marker}",
            row.l,
            row.avg_hcvi.unwrap_or(f64::NAN),
            row.normalized.unwrap_or(f64::NAN),
        );
    }
    println!("\noptimal_l: {}", report.optimal_l);
    Ok(())
}

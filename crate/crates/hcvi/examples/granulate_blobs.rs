//! Granulate a three-blob dataset and inspect the resulting hyper-balls.
//!
//! ```bash
//! cargo run --example granulate_blobs
//! ```

use hcvi::granulation::{granulate, GranulationConfig};
use hcvi::synth::{generate_synthetic, SynthSpec};

fn main() -> hcvi::Result<()> {
    let (dataset, _truth) = generate_synthetic(
        &[SynthSpec::Blobs {
            clusters: 3,
            points_per: 80,
            spread: 1.0,
            separation: 12.0,
            dim: 2,
        }],
        42,
    )?;

    let config = GranulationConfig::default();
    let granulation = granulate(&dataset.points, &config)?;

    println!(
        "granulated {} points into {} balls (+{} noise balls) at bd threshold {:.4}",
        dataset.len(),
        granulation.m(),
        granulation.noise_balls.len(),
        granulation.bd_threshold,
    );
    println!("\nball  members  radius_max  radius_avg  balance_degree");
    for (i, ball) in granulation.balls.iter().enumerate() {
        println!(
            "{i:<5} {:<8} {:<11.4} {:<11.4} {:.4}",
            ball.len(),
            ball.radius_max,
            ball.radius_avg,
            ball.balance_degree
        );
    }

    // every ball sits at or below the threshold, or could not be split
    let worst = granulation
        .balls
        .iter()
        .map(|b| b.balance_degree)
        .fold(0.0f64, f64::max);
    println!("\nlargest balance degree among kept balls: {worst:.4}");
    Ok(())
}

//! Synthetic dataset generators for fixtures and benchmarks: Gaussian blobs
//! on a grid, concentric rings, and uniform background noise. Every
//! generator is deterministic for a fixed seed and returns ground-truth
//! labels alongside the points (`-1` for noise).

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::geometry::Point;

/// One part of a synthetic dataset; parts are generated in order and
/// concatenated.
#[derive(Debug, Clone)]
pub enum SynthSpec {
    /// Isotropic Gaussian blobs centered on a grid scaled by `separation`.
    Blobs {
        clusters: usize,
        points_per: usize,
        spread: f64,
        separation: f64,
        dim: usize,
    },
    /// Concentric 2-D annuli around the origin, one label per radius.
    /// Radial noise is `jitter` times a standard normal sample, clamped to
    /// four standard deviations so every radius stays within
    /// `4 * jitter` of its ring.
    Rings {
        points_per: usize,
        radii: Vec<f64>,
        jitter: f64,
    },
    /// Uniform background noise labeled `-1`. The point count is
    /// `ceil(fraction * points generated so far)`; the box defaults to the
    /// bounding box of those points, padded by 10% of each extent.
    Noise {
        fraction: f64,
        bounding_box: Option<(Point, Point)>,
    },
}

/// Generate a dataset from the given parts. Labels `0..` number the blobs
/// and rings in generation order; noise points are labeled `-1`.
pub fn generate_synthetic(parts: &[SynthSpec], seed: u64) -> Result<(Dataset, Vec<i64>)> {
    if parts.is_empty() {
        return Err(Error::InvalidConfig("no synthetic parts requested".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Point> = Vec::new();
    let mut labels: Vec<i64> = Vec::new();
    let mut next_label = 0i64;

    for part in parts {
        match part {
            SynthSpec::Blobs {
                clusters,
                points_per,
                spread,
                separation,
                dim,
            } => {
                validate_blobs(*clusters, *points_per, *spread, *separation, *dim)?;
                for b in 0..*clusters {
                    let center = grid_center(b, *clusters, *separation, *dim);
                    for _ in 0..*points_per {
                        let point = center
                            .iter()
                            .map(|c| {
                                let z: f64 = StandardNormal.sample(&mut rng);
                                c + spread * z
                            })
                            .collect();
                        points.push(point);
                        labels.push(next_label);
                    }
                    next_label += 1;
                }
            }
            SynthSpec::Rings {
                points_per,
                radii,
                jitter,
            } => {
                validate_rings(*points_per, radii, *jitter)?;
                for &radius in radii {
                    for _ in 0..*points_per {
                        let angle = rng.random_range(0.0..std::f64::consts::TAU);
                        let z: f64 = StandardNormal.sample(&mut rng);
                        let r = radius + jitter * z.clamp(-4.0, 4.0);
                        points.push(vec![r * angle.cos(), r * angle.sin()]);
                        labels.push(next_label);
                    }
                    next_label += 1;
                }
            }
            SynthSpec::Noise {
                fraction,
                bounding_box,
            } => {
                if *fraction <= 0.0 || !fraction.is_finite() {
                    return Err(Error::InvalidConfig(
                        "noise fraction must be a positive finite number".into(),
                    ));
                }
                if points.is_empty() {
                    return Err(Error::InvalidConfig(
                        "a noise part needs preceding parts to size itself against".into(),
                    ));
                }
                let (lo, hi) = match bounding_box {
                    Some(bb) => bb.clone(),
                    None => padded_bounding_box(&points),
                };
                if lo.len() != points[0].len() || hi.len() != lo.len() {
                    return Err(Error::DimensionMismatch {
                        expected: points[0].len(),
                        found: lo.len().min(hi.len()),
                    });
                }
                let count = (fraction * points.len() as f64).ceil() as usize;
                for _ in 0..count {
                    let point = lo
                        .iter()
                        .zip(&hi)
                        .map(|(&a, &b)| if a < b { rng.random_range(a..b) } else { a })
                        .collect();
                    points.push(point);
                    labels.push(-1);
                }
            }
        }
    }

    let dataset = Dataset::new(points, None, format!("synthetic(seed={seed})"))?;
    Ok((dataset, labels))
}

fn validate_blobs(
    clusters: usize,
    points_per: usize,
    spread: f64,
    separation: f64,
    dim: usize,
) -> Result<()> {
    if clusters < 1 || points_per < 1 || dim < 1 {
        return Err(Error::InvalidConfig(
            "blobs need clusters >= 1, points_per >= 1, dim >= 1".into(),
        ));
    }
    if spread < 0.0 || !spread.is_finite() || separation < 0.0 || !separation.is_finite() {
        return Err(Error::InvalidConfig(
            "blob spread and separation must be non-negative finite numbers".into(),
        ));
    }
    Ok(())
}

fn validate_rings(points_per: usize, radii: &[f64], jitter: f64) -> Result<()> {
    if points_per < 1 || radii.is_empty() {
        return Err(Error::InvalidConfig(
            "rings need points_per >= 1 and at least one radius".into(),
        ));
    }
    if radii.iter().any(|r| *r < 0.0 || !r.is_finite()) {
        return Err(Error::InvalidConfig(
            "ring radii must be non-negative finite numbers".into(),
        ));
    }
    if jitter < 0.0 || !jitter.is_finite() {
        return Err(Error::InvalidConfig(
            "ring jitter must be a non-negative finite number".into(),
        ));
    }
    Ok(())
}

/// Blob centers live on an axis-aligned grid in the first two dimensions
/// (a line when `dim == 1`), scaled by `separation`.
fn grid_center(index: usize, clusters: usize, separation: f64, dim: usize) -> Point {
    let mut center = vec![0.0; dim];
    if dim == 1 {
        center[0] = index as f64 * separation;
    } else {
        let side = (clusters as f64).sqrt().ceil() as usize;
        center[0] = (index % side) as f64 * separation;
        center[1] = (index / side) as f64 * separation;
    }
    center
}

fn padded_bounding_box(points: &[Point]) -> (Point, Point) {
    let dim = points[0].len();
    let mut lo = points[0].clone();
    let mut hi = points[0].clone();
    for p in points {
        for d in 0..dim {
            lo[d] = lo[d].min(p[d]);
            hi[d] = hi[d].max(p[d]);
        }
    }
    for d in 0..dim {
        let extent = hi[d] - lo[d];
        let pad = if extent > 0.0 { 0.1 * extent } else { 0.5 };
        lo[d] -= pad;
        hi[d] += pad;
    }
    (lo, hi)
}

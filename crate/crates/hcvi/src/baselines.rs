//! Classic point-level validity indices, for comparison against the
//! ball-level index: silhouette, Davies-Bouldin, and Calinski-Harabasz in
//! their textbook forms. All three are computed on points (not balls) so the
//! numbers are the literature-standard quantities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{euclidean, Point};

/// The three classic scores for one clustering.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BaselineScores {
    /// Mean per-point silhouette, in `[-1, 1]`; higher is better.
    pub silhouette: f64,
    /// Davies-Bouldin index; lower is better.
    pub davies_bouldin: f64,
    /// Calinski-Harabasz ratio; higher is better.
    pub calinski_harabasz: f64,
}

/// Compute silhouette, Davies-Bouldin, and Calinski-Harabasz for point
/// labels in `[0, l)`. Points labeled `-1` carry no cluster and are skipped.
/// Every cluster must own at least one labeled point.
pub fn baseline_indices(points: &[Point], labels: &[i64], l: usize) -> Result<BaselineScores> {
    if l < 2 {
        return Err(Error::InvalidConfig(format!(
            "baseline indices need l >= 2 clusters, got {l}"
        )));
    }
    if labels.len() != points.len() {
        return Err(Error::InvalidLabels(format!(
            "got {} labels for {} points",
            labels.len(),
            points.len()
        )));
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); l];
    for (i, &label) in labels.iter().enumerate() {
        if label < -1 || label >= l as i64 {
            return Err(Error::InvalidLabels(format!(
                "point {i} has label {label}, outside -1..{}",
                l as i64 - 1
            )));
        }
        if label >= 0 {
            members[label as usize].push(i);
        }
    }
    for (k, m) in members.iter().enumerate() {
        if m.is_empty() {
            return Err(Error::InvalidLabels(format!(
                "cluster {k} owns no labeled point"
            )));
        }
    }

    Ok(BaselineScores {
        silhouette: silhouette(points, &members),
        davies_bouldin: davies_bouldin(points, &members),
        calinski_harabasz: calinski_harabasz(points, &members),
    })
}

fn mean_point(points: &[Point], ids: &[usize]) -> Point {
    let dim = points[ids[0]].len();
    let mut mean = vec![0.0; dim];
    for &i in ids {
        for (m, x) in mean.iter_mut().zip(&points[i]) {
            *m += x;
        }
    }
    for m in mean.iter_mut() {
        *m /= ids.len() as f64;
    }
    mean
}

/// Mean over labeled points of `(b - a) / max(a, b)`; a singleton cluster
/// contributes 0 for each of its points.
fn silhouette(points: &[Point], members: &[Vec<usize>]) -> f64 {
    let mut total = 0.0;
    let mut count = 0usize;
    for (k, own) in members.iter().enumerate() {
        for &i in own {
            count += 1;
            if own.len() == 1 {
                continue; // singleton convention: term is 0
            }
            let a = own
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| euclidean(&points[i], &points[j]))
                .sum::<f64>()
                / (own.len() - 1) as f64;
            let b = members
                .iter()
                .enumerate()
                .filter(|(u, _)| *u != k)
                .map(|(_, other)| {
                    other
                        .iter()
                        .map(|&j| euclidean(&points[i], &points[j]))
                        .sum::<f64>()
                        / other.len() as f64
                })
                .fold(f64::INFINITY, f64::min);
            let denom = a.max(b);
            if denom > 0.0 {
                total += (b - a) / denom;
            }
        }
    }
    if count == 0 {
        0.0
    } else {
        total / count as f64
    }
}

/// Mean over clusters of the worst `(sigma_i + sigma_j) / d(mu_i, mu_j)`
/// ratio. Centroid distances are floored at `1e-12` of the bounding-box
/// diagonal so coincident centroids cannot divide by zero.
fn davies_bouldin(points: &[Point], members: &[Vec<usize>]) -> f64 {
    let l = members.len();
    let centroids: Vec<Point> = members.iter().map(|m| mean_point(points, m)).collect();
    let sigma: Vec<f64> = members
        .iter()
        .zip(&centroids)
        .map(|(m, c)| m.iter().map(|&i| euclidean(&points[i], c)).sum::<f64>() / m.len() as f64)
        .collect();

    let diameter = bounding_box_diagonal(points, members);
    if diameter == 0.0 {
        return 0.0; // all labeled points coincide
    }
    let floor = 1e-12 * diameter;

    let mut total = 0.0;
    for i in 0..l {
        let mut worst = 0.0f64;
        for j in 0..l {
            if i == j {
                continue;
            }
            let d = euclidean(&centroids[i], &centroids[j]).max(floor);
            worst = worst.max((sigma[i] + sigma[j]) / d);
        }
        total += worst;
    }
    total / l as f64
}

/// Between-group dispersion over within-group dispersion, each normalized by
/// its degrees of freedom. Perfectly tight clusters (zero within-group
/// dispersion) score 1.
fn calinski_harabasz(points: &[Point], members: &[Vec<usize>]) -> f64 {
    let l = members.len();
    let all: Vec<usize> = members.iter().flatten().copied().collect();
    let n = all.len();
    let grand = mean_point(points, &all);

    let mut between = 0.0;
    let mut within = 0.0;
    for m in members {
        let centroid = mean_point(points, m);
        between += m.len() as f64 * euclidean(&centroid, &grand).powi(2);
        within += m
            .iter()
            .map(|&i| euclidean(&points[i], &centroid).powi(2))
            .sum::<f64>();
    }
    if within == 0.0 || n <= l {
        return 1.0;
    }
    (between / (l - 1) as f64) / (within / (n - l) as f64)
}

fn bounding_box_diagonal(points: &[Point], members: &[Vec<usize>]) -> f64 {
    let mut ids = members.iter().flatten();
    let first = match ids.next() {
        Some(&i) => i,
        None => return 0.0,
    };
    let mut lo = points[first].clone();
    let mut hi = points[first].clone();
    for &i in ids {
        for (d, x) in points[i].iter().enumerate() {
            lo[d] = lo[d].min(*x);
            hi[d] = hi[d].max(*x);
        }
    }
    euclidean(&lo, &hi)
}

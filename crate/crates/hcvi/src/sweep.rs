//! Sweeping candidate cluster counts and picking the best one.
//!
//! For each `l` from 2 up to `floor(sqrt(m))` (m = kept balls), a clustering
//! is produced, scored with the ball-level index, and compared against the
//! classic point-level baselines. Scores are normalized by the sweep maximum
//! and the optimal `l` is the argmin of the normalized score, ties going to
//! the smaller count.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::baselines::{baseline_indices, BaselineScores};
use crate::error::{Error, Result};
use crate::geometry::{euclidean, Point};
use crate::granulation::Granulation;
use crate::index::{assign_balls, hcvi_for_l, normalize_scores, Clustering, ClusterScore};

/// Where candidate clusterings come from.
#[derive(Debug, Clone)]
pub enum ClustererMode {
    /// K-means over ball centers, each weighted by its member count; point
    /// labels are inherited from their ball. The default: m items instead
    /// of n points.
    KMeansOnBalls,
    /// K-means over the raw points; balls take the majority label of their
    /// members.
    KMeansOnPoints,
    /// Score externally supplied per-point labelings instead of clustering.
    /// Each label set becomes one sweep row with its own `l`.
    ExternalLabels(Vec<LabelSet>),
}

/// One externally supplied per-point labeling.
#[derive(Debug, Clone)]
pub struct LabelSet {
    /// Where the labels came from; echoed in the report row.
    pub name: String,
    /// One label per dataset point; `-1` marks points without a cluster.
    pub labels: Vec<i64>,
}

/// Knobs for a sweep run.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub clusterer: ClustererMode,
    /// Smallest candidate cluster count (at least 2).
    pub l_min: usize,
    /// Replaces the `floor(sqrt(m))` upper bound when set. The report flags
    /// the override.
    pub l_max_override: Option<usize>,
    pub seed: u64,
    /// Restarts per k-means call; the lowest within-cluster sum of squares
    /// wins.
    pub restarts: usize,
    /// Iteration cap per k-means restart.
    pub max_iterations: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            clusterer: ClustererMode::KMeansOnBalls,
            l_min: 2,
            l_max_override: None,
            seed: 0,
            restarts: 10,
            max_iterations: 100,
        }
    }
}

/// One scored candidate clustering.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    /// Cluster count of this candidate.
    pub l: usize,
    /// Name of the external label set, when one produced this row.
    pub source: Option<String>,
    /// Raw index average for this candidate; `None` when invalid.
    pub avg_hcvi: Option<f64>,
    /// `avg_hcvi` divided by the sweep maximum; `None` when invalid.
    pub normalized: Option<f64>,
    /// Per-cluster compactness/separation behind the average.
    pub per_cluster: Vec<ClusterScore>,
    pub valid: bool,
    pub invalid_reason: Option<String>,
    /// Classic point-level scores for the same labels, when computable.
    pub baselines: Option<BaselineScores>,
}

/// The sweep outcome across all candidate cluster counts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    /// Ball count the sqrt bound was computed from.
    pub m: usize,
    pub l_min: usize,
    pub l_max: usize,
    /// True when `l_max` came from an override rather than `floor(sqrt(m))`.
    pub l_max_overridden: bool,
    pub rows: Vec<SweepRow>,
    /// Cluster count of the winning row.
    pub optimal_l: usize,
    /// Index of the winning row in `rows`.
    pub optimal_row: usize,
}

/// Result of one k-means run (best restart).
#[derive(Debug, Clone)]
pub struct KMeansResult {
    pub labels: Vec<usize>,
    pub centers: Vec<Point>,
    /// Weighted within-cluster sum of squared distances.
    pub wcss: f64,
}

/// Lloyd's algorithm with greedy farthest-point seeding.
///
/// Restart `r` draws its first center with a generator seeded `seed + r`;
/// the remaining centers greedily maximize the distance to the nearest
/// chosen center. Items carry weights (use 1.0 for plain k-means): weights
/// scale the centroid updates and the returned cost. Deterministic for a
/// fixed configuration; the restart with the lowest cost wins, first wins
/// ties.
pub fn kmeans(
    items: &[Point],
    weights: &[f64],
    l: usize,
    seed: u64,
    restarts: usize,
    max_iterations: usize,
) -> Result<KMeansResult> {
    let n = items.len();
    if l == 0 {
        return Err(Error::InvalidConfig("k-means needs l >= 1".into()));
    }
    if l > n {
        return Err(Error::TooFewItems { l, items: n });
    }
    if weights.len() != n {
        return Err(Error::InvalidConfig(format!(
            "got {} weights for {} items",
            weights.len(),
            n
        )));
    }
    if restarts == 0 {
        return Err(Error::InvalidConfig("k-means needs at least 1 restart".into()));
    }
    let dim = items[0].len();
    for (row, p) in items.iter().enumerate() {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        for (col, x) in p.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFinite { row, col });
            }
        }
    }
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 || !w.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "weight {i} is {w}, expected a positive finite value"
            )));
        }
    }

    let mut best: Option<KMeansResult> = None;
    for restart in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(restart as u64));
        let run = lloyd_once(items, weights, l, rng.random_range(0..n), max_iterations);
        if best.as_ref().is_none_or(|b| run.wcss < b.wcss) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one restart"))
}

fn lloyd_once(
    items: &[Point],
    weights: &[f64],
    l: usize,
    first: usize,
    max_iterations: usize,
) -> KMeansResult {
    let n = items.len();

    // greedy farthest-point seeding from the drawn first index
    let mut chosen = vec![false; n];
    let mut seed_ids = Vec::with_capacity(l);
    chosen[first] = true;
    seed_ids.push(first);
    let mut nearest: Vec<f64> = items.iter().map(|p| euclidean(p, &items[first])).collect();
    while seed_ids.len() < l {
        let mut next = usize::MAX;
        let mut far = -1.0f64;
        for (i, &d) in nearest.iter().enumerate() {
            if !chosen[i] && d > far {
                far = d;
                next = i;
            }
        }
        chosen[next] = true;
        seed_ids.push(next);
        for (i, d) in nearest.iter_mut().enumerate() {
            *d = d.min(euclidean(&items[i], &items[next]));
        }
    }
    let mut centers: Vec<Point> = seed_ids.iter().map(|&i| items[i].clone()).collect();

    let mut labels = vec![0usize; n];
    for _ in 0..max_iterations {
        let mut next_labels = Vec::with_capacity(n);
        for item in items {
            let mut best_k = 0usize;
            let mut best_d = euclidean(item, &centers[0]);
            for (k, center) in centers.iter().enumerate().skip(1) {
                let d = euclidean(item, center);
                if d < best_d {
                    best_d = d;
                    best_k = k;
                }
            }
            next_labels.push(best_k);
        }
        let converged = next_labels == labels;
        labels = next_labels;
        if converged {
            break;
        }

        let dim = items[0].len();
        let mut sums = vec![vec![0.0; dim]; l];
        let mut mass = vec![0.0f64; l];
        for ((item, &label), &w) in items.iter().zip(&labels).zip(weights) {
            mass[label] += w;
            for (s, x) in sums[label].iter_mut().zip(item) {
                *s += w * x;
            }
        }
        for k in 0..l {
            if mass[k] > 0.0 {
                for s in sums[k].iter_mut() {
                    *s /= mass[k];
                }
                centers[k] = sums[k].clone();
            }
            // empty clusters keep their previous center
        }
    }

    let wcss = items
        .iter()
        .zip(&labels)
        .zip(weights)
        .map(|((item, &label), &w)| w * euclidean(item, &centers[label]).powi(2))
        .sum();
    KMeansResult {
        labels,
        centers,
        wcss,
    }
}

/// Run the full candidate sweep over a granulation.
pub fn run_sweep(
    granulation: &Granulation,
    points: &[Point],
    config: &SweepConfig,
) -> Result<SweepReport> {
    if config.l_min < 2 {
        return Err(Error::InvalidConfig(format!(
            "l_min must be at least 2, got {}",
            config.l_min
        )));
    }
    let m = granulation.m();
    let bound = m.isqrt();
    let (l_max, overridden) = match config.l_max_override {
        Some(l_max) => (l_max, true),
        None => (bound, false),
    };
    let external = matches!(config.clusterer, ClustererMode::ExternalLabels(_));
    if !external {
        if !overridden && bound < 2 {
            return Err(Error::SweepBound { m, bound });
        }
        if l_max < config.l_min {
            return Err(Error::InvalidConfig(format!(
                "l_max = {l_max} is below l_min = {}",
                config.l_min
            )));
        }
    }

    let mut rows: Vec<SweepRow> = Vec::new();
    match &config.clusterer {
        ClustererMode::KMeansOnBalls => {
            let centers: Vec<Point> = granulation.balls.iter().map(|b| b.center.clone()).collect();
            let ball_weights: Vec<f64> = granulation.balls.iter().map(|b| b.len() as f64).collect();
            for l in config.l_min..=l_max {
                rows.push(score_kmeans_on_balls(
                    granulation,
                    points,
                    &centers,
                    &ball_weights,
                    l,
                    config,
                ));
            }
        }
        ClustererMode::KMeansOnPoints => {
            let unit = vec![1.0; points.len()];
            for l in config.l_min..=l_max {
                rows.push(score_kmeans_on_points(granulation, points, &unit, l, config));
            }
        }
        ClustererMode::ExternalLabels(sets) => {
            if sets.is_empty() {
                return Err(Error::InvalidConfig(
                    "external-labels mode needs at least one label set".into(),
                ));
            }
            for set in sets {
                rows.push(score_label_set(granulation, points, set));
            }
        }
    }

    // normalize by the largest valid average
    let raw: Vec<(usize, Option<f64>)> = rows.iter().map(|r| (r.l, r.avg_hcvi)).collect();
    let normalized = normalize_scores(&raw)
        .map_err(|_| Error::NoValidScores("every sweep row is invalid".into()))?;
    for (row, (_, norm)) in rows.iter_mut().zip(normalized) {
        row.normalized = norm;
    }

    // argmin of the normalized score; smaller l wins ties, then earlier row
    let mut optimal_row = None;
    for (i, row) in rows.iter().enumerate() {
        let Some(score) = row.normalized else {
            continue;
        };
        let better = match optimal_row {
            None => true,
            Some(best_i) => {
                let best: &SweepRow = &rows[best_i];
                let best_score = best.normalized.expect("winner is valid");
                score < best_score || (score == best_score && row.l < best.l)
            }
        };
        if better {
            optimal_row = Some(i);
        }
    }
    let optimal_row = optimal_row.expect("normalize_scores guarantees a valid row");

    let (l_min, l_max) = if external {
        let min = rows.iter().map(|r| r.l).min().unwrap_or(config.l_min);
        let max = rows.iter().map(|r| r.l).max().unwrap_or(l_max);
        (min, max)
    } else {
        (config.l_min, l_max)
    };

    Ok(SweepReport {
        m,
        l_min,
        l_max,
        l_max_overridden: overridden,
        optimal_l: rows[optimal_row].l,
        optimal_row,
        rows,
    })
}

fn invalid_row(l: usize, source: Option<String>, reason: String) -> SweepRow {
    SweepRow {
        l,
        source,
        avg_hcvi: None,
        normalized: None,
        per_cluster: Vec::new(),
        valid: false,
        invalid_reason: Some(reason),
        baselines: None,
    }
}

fn score_kmeans_on_balls(
    granulation: &Granulation,
    points: &[Point],
    centers: &[Point],
    ball_weights: &[f64],
    l: usize,
    config: &SweepConfig,
) -> SweepRow {
    if l > centers.len() {
        return invalid_row(
            l,
            None,
            format!("l = {l} exceeds the {} available balls", centers.len()),
        );
    }
    let km = match kmeans(
        centers,
        ball_weights,
        l,
        config.seed,
        config.restarts,
        config.max_iterations,
    ) {
        Ok(km) => km,
        Err(e) => return invalid_row(l, None, e.to_string()),
    };
    let mut clustering = match Clustering::new(l, km.labels) {
        Ok(c) => c,
        Err(e) => return invalid_row(l, None, e.to_string()),
    };

    // points inherit their ball's label; noise-ball points carry none
    let mut point_labels = vec![-1i64; granulation.n_points];
    for (ball, &label) in granulation.balls.iter().zip(&clustering.ball_labels) {
        for &id in &ball.member_ids {
            point_labels[id] = label as i64;
        }
    }
    clustering.point_labels = Some(point_labels);

    finish_row(granulation, points, clustering, l, None)
}

fn score_kmeans_on_points(
    granulation: &Granulation,
    points: &[Point],
    unit_weights: &[f64],
    l: usize,
    config: &SweepConfig,
) -> SweepRow {
    if l > points.len() {
        return invalid_row(
            l,
            None,
            format!("l = {l} exceeds the {} available points", points.len()),
        );
    }
    let km = match kmeans(
        points,
        unit_weights,
        l,
        config.seed,
        config.restarts,
        config.max_iterations,
    ) {
        Ok(km) => km,
        Err(e) => return invalid_row(l, None, e.to_string()),
    };
    let labels: Vec<i64> = km.labels.iter().map(|&k| k as i64).collect();
    match assign_balls(granulation, &labels, l) {
        Ok(clustering) => finish_row(granulation, points, clustering, l, None),
        Err(e) => invalid_row(l, None, e.to_string()),
    }
}

fn score_label_set(granulation: &Granulation, points: &[Point], set: &LabelSet) -> SweepRow {
    let source = Some(set.name.clone());
    let (labels, l) = match densify_labels(&set.labels) {
        Ok(pair) => pair,
        Err(e) => return invalid_row(0, source, e.to_string()),
    };
    match assign_balls(granulation, &labels, l) {
        Ok(clustering) => finish_row(granulation, points, clustering, l, source),
        Err(e) => invalid_row(l, source, e.to_string()),
    }
}

/// Remap arbitrary non-negative label values onto `0..l`, preserving order.
/// `-1` stays `-1`. Errors when fewer than two clusters remain.
pub fn densify_labels(labels: &[i64]) -> Result<(Vec<i64>, usize)> {
    let mut distinct: Vec<i64> = labels.iter().copied().filter(|&v| v >= 0).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if labels.iter().any(|&v| v < -1) {
        return Err(Error::InvalidLabels(
            "labels below -1 are not meaningful".into(),
        ));
    }
    if distinct.len() < 2 {
        return Err(Error::InvalidLabels(format!(
            "a labeling needs at least 2 distinct cluster labels, got {}",
            distinct.len()
        )));
    }
    let dense: Vec<i64> = labels
        .iter()
        .map(|&v| {
            if v < 0 {
                -1
            } else {
                distinct.binary_search(&v).expect("value collected above") as i64
            }
        })
        .collect();
    Ok((dense, distinct.len()))
}

fn finish_row(
    granulation: &Granulation,
    points: &[Point],
    clustering: Clustering,
    l: usize,
    source: Option<String>,
) -> SweepRow {
    let report = match hcvi_for_l(&granulation.balls, &clustering) {
        Ok(r) => r,
        Err(e) => return invalid_row(l, source, e.to_string()),
    };
    let baselines = clustering
        .point_labels
        .as_ref()
        .and_then(|labels| baseline_indices(points, labels, l).ok());
    SweepRow {
        l,
        source,
        avg_hcvi: report.avg_hcvi,
        normalized: None,
        per_cluster: report.per_cluster,
        valid: report.valid,
        invalid_reason: report.invalid_reason,
        baselines,
    }
}

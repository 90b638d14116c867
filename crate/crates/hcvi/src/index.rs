//! The hyper-ball cluster-validity index.
//!
//! Given a clustering of hyper-balls, each cluster gets an intracluster
//! compactness (the largest gap between its non-overlapping ball pairs) and
//! an intercluster separation (the smallest gap from its balls to other
//! clusters' balls). The per-cluster index is compactness over separation;
//! the clustering's score is the mean across clusters, so smaller is better.
//!
//! Overlapping pairs carry no usable gap, so degenerate cases fall back to
//! global statistics: compactness falls back to the smallest non-overlapping
//! within-cluster gap anywhere (then to the cross-cluster one), separation
//! to the smallest non-overlapping cross-cluster gap anywhere (then to the
//! ball-set diameter). A report is invalid only when every stage of a
//! cascade is exhausted.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ball_set_diameter, pairwise_ball_distances, DistanceMatrix, HyperBall};
use crate::granulation::Granulation;

/// Relative floor applied to separation before dividing, to keep the ratio
/// finite when a non-overlapping gap is numerically zero.
const SEP_FLOOR_FRACTION: f64 = 1e-12;

/// An assignment of hyper-balls to `l` cluster labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Clustering {
    /// Number of clusters.
    pub l: usize,
    /// Cluster id in `[0, l)` for each kept ball, by ball index.
    pub ball_labels: Vec<usize>,
    /// Per-point cluster ids when the labels came from a point-level
    /// clusterer; `-1` marks points that carry no cluster (noise).
    pub point_labels: Option<Vec<i64>>,
    /// Cluster ids that own no ball. Non-empty makes the clustering invalid;
    /// the ids are kept so the failure is visible, not silently dropped.
    pub empty_clusters: Vec<usize>,
}

impl Clustering {
    /// Build a clustering from per-ball labels, flagging empty clusters.
    pub fn new(l: usize, ball_labels: Vec<usize>) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidConfig(format!(
                "a clustering needs l >= 2 clusters, got {l}"
            )));
        }
        let mut counts = vec![0usize; l];
        for &label in &ball_labels {
            if label >= l {
                return Err(Error::UnknownCluster { cluster: label, l });
            }
            counts[label] += 1;
        }
        let empty_clusters: Vec<usize> = (0..l).filter(|&k| counts[k] == 0).collect();
        Ok(Self {
            l,
            ball_labels,
            point_labels: None,
            empty_clusters,
        })
    }

    /// True when every cluster owns at least one ball.
    pub fn is_valid(&self) -> bool {
        self.empty_clusters.is_empty()
    }
}

/// Label each kept ball with the majority cluster among its member points.
///
/// `point_labels` must cover every dataset point; values must lie in
/// `[0, l)` or be `-1` for points that carry no cluster. Ties break toward
/// the smaller cluster id. A kept ball whose members are all unlabeled is an
/// error: the labels do not cover it.
pub fn assign_balls(
    granulation: &Granulation,
    point_labels: &[i64],
    l: usize,
) -> Result<Clustering> {
    if l < 2 {
        return Err(Error::InvalidConfig(format!(
            "a clustering needs l >= 2 clusters, got {l}"
        )));
    }
    if point_labels.len() != granulation.n_points {
        return Err(Error::InvalidLabels(format!(
            "got {} labels for {} points",
            point_labels.len(),
            granulation.n_points
        )));
    }
    for (i, &label) in point_labels.iter().enumerate() {
        if label < -1 || label >= l as i64 {
            return Err(Error::InvalidLabels(format!(
                "point {i} has label {label}, outside -1..{}",
                l as i64 - 1
            )));
        }
    }

    let mut ball_labels = Vec::with_capacity(granulation.balls.len());
    for (bi, ball) in granulation.balls.iter().enumerate() {
        let mut votes = vec![0usize; l];
        for &id in &ball.member_ids {
            let label = point_labels[id];
            if label >= 0 {
                votes[label as usize] += 1;
            }
        }
        // strict > keeps the smallest cluster id on ties
        let (winner, count) = votes
            .iter()
            .enumerate()
            .fold((0usize, 0usize), |(wk, wc), (k, &c)| {
                if c > wc {
                    (k, c)
                } else {
                    (wk, wc)
                }
            });
        if count == 0 {
            return Err(Error::InvalidLabels(format!(
                "ball {bi} has no labeled member points"
            )));
        }
        ball_labels.push(winner);
    }

    let mut clustering = Clustering::new(l, ball_labels)?;
    clustering.point_labels = Some(point_labels.to_vec());
    Ok(clustering)
}

/// Per-cluster scores inside an [`IndexReport`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClusterScore {
    pub cluster: usize,
    pub com: f64,
    pub sep: f64,
    pub hcvi: f64,
}

/// The index evaluated over one clustering.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndexReport {
    /// Compactness, separation, and their ratio for each cluster.
    pub per_cluster: Vec<ClusterScore>,
    /// Mean of the per-cluster ratios; `None` when the report is invalid.
    pub avg_hcvi: Option<f64>,
    /// False when a fallback cascade exhausted every stage.
    pub valid: bool,
    /// Human-readable cause when `valid` is false.
    pub invalid_reason: Option<String>,
}

impl IndexReport {
    fn invalid(reason: String) -> Self {
        Self {
            per_cluster: Vec::new(),
            avg_hcvi: None,
            valid: false,
            invalid_reason: Some(reason),
        }
    }
}

/// Smallest gap over all non-overlapping same-cluster ball pairs, scanning
/// every cluster. `None` when no cluster has such a pair.
pub fn intra_fallback(clustering: &Clustering, distances: &DistanceMatrix) -> Option<f64> {
    let labels = &clustering.ball_labels;
    let mut best: Option<f64> = None;
    for i in 0..labels.len() {
        for j in (i + 1)..labels.len() {
            if labels[i] != labels[j] {
                continue;
            }
            let d = distances.get(i, j);
            if !d.overlapping && best.is_none_or(|b| d.value < b) {
                best = Some(d.value);
            }
        }
    }
    best
}

/// Smallest gap over all non-overlapping cross-cluster ball pairs. `None`
/// when every cross-cluster pair overlaps.
pub fn inter_fallback(clustering: &Clustering, distances: &DistanceMatrix) -> Option<f64> {
    let labels = &clustering.ball_labels;
    let mut best: Option<f64> = None;
    for i in 0..labels.len() {
        for j in (i + 1)..labels.len() {
            if labels[i] == labels[j] {
                continue;
            }
            let d = distances.get(i, j);
            if !d.overlapping && best.is_none_or(|b| d.value < b) {
                best = Some(d.value);
            }
        }
    }
    best
}

/// Intracluster compactness of one cluster: the largest gap between its
/// non-overlapping ball pairs. Single-ball clusters and clusters whose pairs
/// all overlap take `intra_fb`; `None` if that is also undefined (the caller
/// continues the cascade).
pub fn compactness(
    cluster: usize,
    clustering: &Clustering,
    distances: &DistanceMatrix,
    intra_fb: Option<f64>,
) -> Result<Option<f64>> {
    if cluster >= clustering.l {
        return Err(Error::UnknownCluster {
            cluster,
            l: clustering.l,
        });
    }
    let members: Vec<usize> = clustering
        .ball_labels
        .iter()
        .enumerate()
        .filter(|(_, &label)| label == cluster)
        .map(|(i, _)| i)
        .collect();
    let mut best: Option<f64> = None;
    for (a, &i) in members.iter().enumerate() {
        for &j in &members[a + 1..] {
            let d = distances.get(i, j);
            if !d.overlapping && best.is_none_or(|b| d.value > b) {
                best = Some(d.value);
            }
        }
    }
    Ok(best.or(intra_fb))
}

/// Intercluster separation of one cluster: the smallest gap from its balls
/// to every other cluster's balls, over non-overlapping pairs. Falls back to
/// `inter_fb` when all such pairs overlap; `None` if that is also undefined.
pub fn separation(
    cluster: usize,
    clustering: &Clustering,
    distances: &DistanceMatrix,
    inter_fb: Option<f64>,
) -> Result<Option<f64>> {
    if cluster >= clustering.l {
        return Err(Error::UnknownCluster {
            cluster,
            l: clustering.l,
        });
    }
    let labels = &clustering.ball_labels;
    let mut best: Option<f64> = None;
    for (i, &li) in labels.iter().enumerate() {
        if li != cluster {
            continue;
        }
        for (j, &lj) in labels.iter().enumerate() {
            if lj == cluster {
                continue;
            }
            let d = distances.get(i, j);
            if !d.overlapping && best.is_none_or(|b| d.value < b) {
                best = Some(d.value);
            }
        }
    }
    Ok(best.or(inter_fb))
}

/// Evaluate the index over one clustering of the kept balls.
///
/// Computes both fallbacks once, then per cluster: compactness (falling back
/// intra → inter), separation (falling back inter → ball-set diameter), and
/// their ratio with the separation floored at `1e-12` of the diameter. The
/// average is the unweighted mean over clusters.
pub fn hcvi_for_l(balls: &[HyperBall], clustering: &Clustering) -> Result<IndexReport> {
    if clustering.l < 2 {
        return Err(Error::InvalidConfig(format!(
            "the index needs l >= 2 clusters, got {}",
            clustering.l
        )));
    }
    if clustering.ball_labels.len() != balls.len() {
        return Err(Error::InvalidLabels(format!(
            "clustering labels {} balls but {} were given",
            clustering.ball_labels.len(),
            balls.len()
        )));
    }
    if !clustering.is_valid() {
        return Ok(IndexReport::invalid(format!(
            "clusters without any ball: {:?}",
            clustering.empty_clusters
        )));
    }

    let distances = pairwise_ball_distances(balls)?;
    let intra_fb = intra_fallback(clustering, &distances);
    let inter_fb = inter_fallback(clustering, &distances);
    let diameter = ball_set_diameter(balls);
    let sep_floor = SEP_FLOOR_FRACTION * diameter;

    let mut per_cluster = Vec::with_capacity(clustering.l);
    for cluster in 0..clustering.l {
        let com = match compactness(cluster, clustering, &distances, intra_fb)?.or(inter_fb) {
            Some(v) => v,
            None => {
                return Ok(IndexReport::invalid(format!(
                    "cluster {cluster}: no non-overlapping ball pair anywhere to measure \
                     compactness against"
                )))
            }
        };
        let sep = match separation(cluster, clustering, &distances, inter_fb)? {
            Some(v) => v,
            None if diameter > 0.0 => diameter,
            None => {
                return Ok(IndexReport::invalid(format!(
                    "cluster {cluster}: every cross-cluster pair overlaps and the ball set \
                     has zero extent"
                )))
            }
        };
        let sep = sep.max(sep_floor);
        per_cluster.push(ClusterScore {
            cluster,
            com,
            sep,
            hcvi: com / sep,
        });
    }

    let avg = per_cluster.iter().map(|s| s.hcvi).sum::<f64>() / clustering.l as f64;
    Ok(IndexReport {
        per_cluster,
        avg_hcvi: Some(avg),
        valid: true,
        invalid_reason: None,
    })
}

/// Divide each valid score by the largest valid score, so the maximum of the
/// output is exactly 1. Invalid (`None`) entries pass through unchanged.
/// Errors when no entry is valid or a valid score is not strictly positive.
pub fn normalize_scores(scores: &[(usize, Option<f64>)]) -> Result<Vec<(usize, Option<f64>)>> {
    let mut max: Option<f64> = None;
    for &(l, score) in scores {
        if let Some(v) = score {
            if v <= 0.0 || !v.is_finite() {
                return Err(Error::NoValidScores(format!(
                    "score for l = {l} is {v}, expected a positive finite value"
                )));
            }
            if max.is_none_or(|m| v > m) {
                max = Some(v);
            }
        }
    }
    let max = max.ok_or_else(|| Error::NoValidScores("every entry is invalid".into()))?;
    Ok(scores
        .iter()
        .map(|&(l, score)| (l, score.map(|v| v / max)))
        .collect())
}

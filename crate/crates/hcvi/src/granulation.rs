//! Splitting a dataset into hyper-balls.
//!
//! The whole dataset starts as one coarse ball. Any ball whose balance degree
//! exceeds the threshold is bisected with a deterministic 2-means and the
//! children go back on the worklist; balls at or below the threshold are
//! final. After the worklist drains, balls with fewer than
//! `noise_min_points` members are set aside as noise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{euclidean, fit_ball, HyperBall, Point};

/// Knobs for the granulation pass.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GranulationConfig {
    /// Balance-degree stop threshold as a fraction of the root ball's
    /// maximum radius. Expressing it relative to the root keeps the
    /// granulation structure invariant under unit changes.
    pub bd_threshold_fraction: f64,
    /// Minimum member count for a ball to survive noise removal.
    pub noise_min_points: usize,
    /// Iteration cap for each 2-means bisection.
    pub max_kmeans_iterations: usize,
    /// Drives any randomized choice deterministically. The current split
    /// seeding is derived from the data alone, so two runs with different
    /// seeds still granulate identically.
    pub seed: u64,
}

impl Default for GranulationConfig {
    fn default() -> Self {
        Self {
            bd_threshold_fraction: 0.05,
            noise_min_points: 4,
            max_kmeans_iterations: 100,
            seed: 0,
        }
    }
}

impl GranulationConfig {
    fn validate(&self) -> Result<()> {
        if self.bd_threshold_fraction <= 0.0 || !self.bd_threshold_fraction.is_finite() {
            return Err(Error::InvalidConfig(
                "bd_threshold_fraction must be a positive finite number".into(),
            ));
        }
        if self.noise_min_points < 1 {
            return Err(Error::InvalidConfig(
                "noise_min_points must be at least 1".into(),
            ));
        }
        if self.max_kmeans_iterations < 1 {
            return Err(Error::InvalidConfig(
                "max_kmeans_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// The hyper-balls covering a dataset, split into kept and noise balls.
/// Member ids of `balls` and `noise_balls` together partition the dataset
/// index set exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Granulation {
    /// Balls that survived noise removal, in finalization order.
    pub balls: Vec<HyperBall>,
    /// Balls removed because they hold fewer than `noise_min_points` members.
    pub noise_balls: Vec<HyperBall>,
    /// Total number of points in the granulated dataset.
    pub n_points: usize,
    /// Absolute balance-degree threshold used for this run.
    pub bd_threshold: f64,
    /// Maximum radius of the root ball the threshold was derived from.
    pub root_radius_max: f64,
}

impl Granulation {
    /// Number of balls after noise removal.
    pub fn m(&self) -> usize {
        self.balls.len()
    }

    /// Number of points that live in noise balls.
    pub fn noise_point_count(&self) -> usize {
        self.noise_balls.iter().map(|b| b.len()).sum()
    }

    /// Map from point index to the index of its kept ball; `None` for points
    /// in noise balls.
    pub fn point_ball_map(&self) -> Vec<Option<usize>> {
        let mut map = vec![None; self.n_points];
        for (bi, ball) in self.balls.iter().enumerate() {
            for &id in &ball.member_ids {
                map[id] = Some(bi);
            }
        }
        map
    }
}

/// Outcome of trying to split one ball in two.
#[derive(Debug, Clone)]
pub enum Bisection {
    /// The two child balls; their member sets partition the parent's.
    Split(HyperBall, HyperBall),
    /// The ball cannot be split (all member points coincide).
    Indivisible,
}

/// Split a ball's members in two with Lloyd-style 2-means.
///
/// Seeding is farthest-pair: the member farthest from the ball center, then
/// the member farthest from that one. Equidistant points go to the
/// lower-indexed center. Fully deterministic for a given dataset.
pub fn bisect(ball: &HyperBall, points: &[Point], config: &GranulationConfig) -> Result<Bisection> {
    if ball.len() < 2 {
        return Err(Error::InvalidConfig(
            "cannot bisect a ball with fewer than 2 members".into(),
        ));
    }
    let members = &ball.member_ids;

    // Farthest member from the gravity center; ids are sorted, so strict
    // comparison breaks ties toward the lowest id.
    let mut seed_a = members[0];
    let mut best = 0.0f64;
    for &id in members {
        let d = euclidean(&points[id], &ball.center);
        if d > best {
            best = d;
            seed_a = id;
        }
    }

    // Farthest member from the first seed.
    let mut seed_b = members[0];
    let mut best = 0.0f64;
    for &id in members {
        let d = euclidean(&points[id], &points[seed_a]);
        if d > best {
            best = d;
            seed_b = id;
        }
    }
    if best == 0.0 {
        // every member coincides with seed_a
        return Ok(Bisection::Indivisible);
    }

    let mut centers = [points[seed_a].clone(), points[seed_b].clone()];
    let mut assignment: Vec<u8> = vec![0; members.len()];
    for _ in 0..config.max_kmeans_iterations {
        let mut next: Vec<u8> = Vec::with_capacity(members.len());
        for &id in members {
            let d0 = euclidean(&points[id], &centers[0]);
            let d1 = euclidean(&points[id], &centers[1]);
            next.push(u8::from(d1 < d0));
        }
        let counts = [
            next.iter().filter(|&&a| a == 0).count(),
            next.iter().filter(|&&a| a == 1).count(),
        ];
        if counts[0] == 0 || counts[1] == 0 {
            return Ok(Bisection::Indivisible);
        }
        let converged = next == assignment;
        assignment = next;
        if converged {
            break;
        }
        let dim = centers[0].len();
        let mut sums = [vec![0.0; dim], vec![0.0; dim]];
        for (&id, &side) in members.iter().zip(&assignment) {
            for (s, x) in sums[side as usize].iter_mut().zip(&points[id]) {
                *s += x;
            }
        }
        for side in 0..2 {
            for s in sums[side].iter_mut() {
                *s /= counts[side] as f64;
            }
        }
        centers = [sums[0].clone(), sums[1].clone()];
    }

    let left: Vec<usize> = members
        .iter()
        .zip(&assignment)
        .filter(|(_, &side)| side == 0)
        .map(|(&id, _)| id)
        .collect();
    let right: Vec<usize> = members
        .iter()
        .zip(&assignment)
        .filter(|(_, &side)| side == 1)
        .map(|(&id, _)| id)
        .collect();
    Ok(Bisection::Split(
        fit_ball(points, &left)?,
        fit_ball(points, &right)?,
    ))
}

/// Granulate a dataset into hyper-balls and remove noise balls.
///
/// Worklist algorithm: start from the root ball over all points, repeatedly
/// pop a ball and either finalize it (balance degree at or below the
/// threshold, or indivisible) or replace it with its two bisection children.
/// Deterministic: identical inputs produce identical ball lists, ordering
/// included.
pub fn granulate(points: &[Point], config: &GranulationConfig) -> Result<Granulation> {
    config.validate()?;
    if points.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let dim = points[0].len();
    for (row, p) in points.iter().enumerate() {
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

    let all_ids: Vec<usize> = (0..points.len()).collect();
    let root = fit_ball(points, &all_ids)?;
    let root_radius_max = root.radius_max;
    let bd_threshold = config.bd_threshold_fraction * root_radius_max;

    let mut worklist = vec![root];
    let mut finalized: Vec<HyperBall> = Vec::new();
    while let Some(ball) = worklist.pop() {
        if ball.balance_degree > bd_threshold {
            match bisect(&ball, points, config)? {
                Bisection::Split(left, right) => {
                    // left-first depth-first order keeps finalization stable
                    worklist.push(right);
                    worklist.push(left);
                }
                Bisection::Indivisible => finalized.push(ball),
            }
        } else {
            finalized.push(ball);
        }
    }

    let (balls, noise_balls) = remove_noise(finalized, config.noise_min_points);
    Ok(Granulation {
        balls,
        noise_balls,
        n_points: points.len(),
        bd_threshold,
        root_radius_max,
    })
}

/// Partition balls into those with at least `noise_min_points` members and
/// the noise remainder. Order is preserved on both sides.
pub fn remove_noise(
    balls: Vec<HyperBall>,
    noise_min_points: usize,
) -> (Vec<HyperBall>, Vec<HyperBall>) {
    balls
        .into_iter()
        .partition(|ball| ball.len() >= noise_min_points)
}

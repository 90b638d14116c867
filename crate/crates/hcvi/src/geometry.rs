//! Points, hyper-balls, and ball-to-ball distances.
//!
//! A hyper-ball summarizes a subset of dataset points by its gravity center,
//! the maximum member-to-center distance, and the average member-to-center
//! distance. The gap between two balls (center distance minus both maximum
//! radii) is the primitive every index computation is built on: a
//! non-positive gap means the balls overlap.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dataset row: one d-dimensional point.
pub type Point = Vec<f64>;

/// Euclidean (2-norm) distance between two equal-length coordinate slices.
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// A granule: a set of member points summarized by center and radii.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HyperBall {
    /// Sorted, deduplicated indices of the member points in the source dataset.
    pub member_ids: Vec<usize>,
    /// Gravity center (arithmetic mean) of the members.
    pub center: Point,
    /// Maximum member-to-center distance.
    pub radius_max: f64,
    /// Average member-to-center distance; never exceeds `radius_max`.
    pub radius_avg: f64,
    /// `radius_max - radius_avg`. Small values mean the members fill the
    /// ball evenly; zero for singletons and perfectly symmetric sets.
    pub balance_degree: f64,
}

impl HyperBall {
    /// Number of member points.
    pub fn len(&self) -> usize {
        self.member_ids.len()
    }

    /// Always false: a ball cannot be constructed without members.
    pub fn is_empty(&self) -> bool {
        self.member_ids.is_empty()
    }

    /// Dimension of the space the ball lives in.
    pub fn dim(&self) -> usize {
        self.center.len()
    }
}

/// Fit a hyper-ball over the points selected by `member_ids`.
///
/// The center is the arithmetic mean of the members, `radius_max` the largest
/// member-to-center distance, `radius_avg` the mean of those distances, and
/// the balance degree their difference.
pub fn fit_ball(points: &[Point], member_ids: &[usize]) -> Result<HyperBall> {
    if member_ids.is_empty() {
        return Err(Error::EmptyBall);
    }
    let mut ids: Vec<usize> = member_ids.to_vec();
    ids.sort_unstable();
    ids.dedup();
    for &id in &ids {
        if id >= points.len() {
            return Err(Error::MemberOutOfBounds {
                id,
                len: points.len(),
            });
        }
    }

    let dim = points[ids[0]].len();
    for &id in &ids {
        if points[id].len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: points[id].len(),
            });
        }
    }

    let n = ids.len() as f64;
    let mut center = vec![0.0; dim];
    for &id in &ids {
        for (c, x) in center.iter_mut().zip(&points[id]) {
            *c += x;
        }
    }
    for c in center.iter_mut() {
        *c /= n;
    }

    let mut radius_max = 0.0f64;
    let mut sum = 0.0f64;
    for &id in &ids {
        let d = euclidean(&points[id], &center);
        radius_max = radius_max.max(d);
        sum += d;
    }
    // Summation rounding can push the mean a hair past the max when all
    // distances are equal; clamp so radius_avg <= radius_max holds exactly.
    let radius_avg = (sum / n).min(radius_max);

    Ok(HyperBall {
        member_ids: ids,
        center,
        radius_max,
        radius_avg,
        balance_degree: radius_max - radius_avg,
    })
}

/// Signed gap between two hyper-balls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallDistance {
    /// Center-to-center distance minus both maximum radii, in dataset units.
    pub value: f64,
    /// True iff `value <= 0`.
    pub overlapping: bool,
}

impl BallDistance {
    fn from_value(value: f64) -> Self {
        BallDistance {
            value,
            overlapping: value <= 0.0,
        }
    }
}

/// Gap between two balls: center distance minus both maximum radii.
/// Symmetric in its arguments.
pub fn ball_distance(a: &HyperBall, b: &HyperBall) -> Result<BallDistance> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    // group the radii so the result is bit-identical under argument swap
    let value = euclidean(&a.center, &b.center) - (a.radius_max + b.radius_max);
    Ok(BallDistance::from_value(value))
}

/// Symmetric matrix of pairwise ball distances.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<BallDistance>,
}

impl DistanceMatrix {
    /// Number of balls the matrix was built over.
    pub fn len(&self) -> usize {
        self.n
    }

    /// True when the matrix covers no balls.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Distance entry for the ball pair `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> BallDistance {
        assert!(i < self.n && j < self.n, "ball index out of range");
        self.entries[i * self.n + j]
    }
}

/// Compute every pairwise ball distance once, for reuse across the
/// compactness and separation scans. Diagonal entries are the ball against
/// itself and always flagged overlapping.
pub fn pairwise_ball_distances(balls: &[HyperBall]) -> Result<DistanceMatrix> {
    let n = balls.len();
    let mut entries = vec![BallDistance::from_value(0.0); n * n];
    for i in 0..n {
        for j in i..n {
            let d = ball_distance(&balls[i], &balls[j])?;
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    Ok(DistanceMatrix { n, entries })
}

/// Upper bound on the extent of the point set covered by `balls`: the largest
/// center distance plus both maximum radii over all ball pairs (a single ball
/// contributes its own diameter). Used as a positive, scale-proportional
/// guard constant by the index fallbacks.
pub fn ball_set_diameter(balls: &[HyperBall]) -> f64 {
    let mut diameter = 0.0f64;
    for i in 0..balls.len() {
        for j in i..balls.len() {
            let span = euclidean(&balls[i].center, &balls[j].center)
                + balls[i].radius_max
                + balls[j].radius_max;
            diameter = diameter.max(span);
        }
    }
    diameter
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ball(points: &[Point]) -> HyperBall {
        let ids: Vec<usize> = (0..points.len()).collect();
        fit_ball(points, &ids).unwrap()
    }

    #[test]
    fn singleton_ball_has_zero_radii() {
        let b = ball(&[vec![0.0, 0.0]]);
        assert_eq!(b.center, vec![0.0, 0.0]);
        assert_eq!(b.radius_max, 0.0);
        assert_eq!(b.radius_avg, 0.0);
        assert_eq!(b.balance_degree, 0.0);
    }

    #[test]
    fn symmetric_pair_has_zero_balance_degree() {
        let b = ball(&[vec![0.0, 0.0], vec![2.0, 0.0]]);
        assert_eq!(b.center, vec![1.0, 0.0]);
        assert_eq!(b.radius_max, 1.0);
        assert_eq!(b.radius_avg, 1.0);
        assert_eq!(b.balance_degree, 0.0);
    }

    #[test]
    fn three_collinear_points() {
        // distances to the center (1, 0) are {1, 0, 1}
        let b = ball(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]]);
        assert_eq!(b.center, vec![1.0, 0.0]);
        assert_eq!(b.radius_max, 1.0);
        assert!((b.radius_avg - 2.0 / 3.0).abs() < 1e-15);
        assert!((b.balance_degree - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn duplicate_points_give_degenerate_ball() {
        let b = ball(&[vec![3.0, -1.0], vec![3.0, -1.0], vec![3.0, -1.0]]);
        assert_eq!(b.radius_max, 0.0);
        assert_eq!(b.radius_avg, 0.0);
        assert_eq!(b.balance_degree, 0.0);
    }

    #[test]
    fn empty_member_set_is_rejected() {
        let points = vec![vec![0.0]];
        assert!(matches!(fit_ball(&points, &[]), Err(Error::EmptyBall)));
    }

    #[test]
    fn mixed_dimensions_are_rejected() {
        let points = vec![vec![0.0, 0.0], vec![1.0]];
        assert!(matches!(
            fit_ball(&points, &[0, 1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn out_of_bounds_member_is_rejected() {
        let points = vec![vec![0.0]];
        assert!(matches!(
            fit_ball(&points, &[0, 5]),
            Err(Error::MemberOutOfBounds { id: 5, .. })
        ));
    }

    #[test]
    fn ball_distance_subtracts_both_radii() {
        // centers 5 apart, radii 1 and 2
        let a = ball(&[vec![-1.0, 0.0], vec![1.0, 0.0]]);
        let b = ball(&[vec![3.0, 0.0], vec![7.0, 0.0]]);
        let d = ball_distance(&a, &b).unwrap();
        assert!((d.value - 2.0).abs() < 1e-12);
        assert!(!d.overlapping);
    }

    #[test]
    fn identical_balls_overlap() {
        let a = ball(&[vec![0.0], vec![2.0]]);
        let d = ball_distance(&a, &a).unwrap();
        assert!((d.value + 2.0).abs() < 1e-12);
        assert!(d.overlapping);
    }

    #[test]
    fn singleton_distance_reduces_to_point_distance() {
        let a = ball(&[vec![0.0, 0.0]]);
        let b = ball(&[vec![3.0, 0.0]]);
        let d = ball_distance(&a, &b).unwrap();
        assert_eq!(d.value, 3.0);
        assert!(!d.overlapping);
    }

    #[test]
    fn distance_dimension_mismatch_is_rejected() {
        let a = ball(&[vec![0.0, 0.0]]);
        let b = ball(&[vec![0.0]]);
        assert!(matches!(
            ball_distance(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn single_ball_matrix_has_overlapping_diagonal() {
        let m = pairwise_ball_distances(&[ball(&[vec![0.0], vec![1.0]])]).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m.get(0, 0).overlapping);
    }

    #[test]
    fn two_singleton_matrix_is_symmetric() {
        let balls = [ball(&[vec![0.0]]), ball(&[vec![3.0]])];
        let m = pairwise_ball_distances(&balls).unwrap();
        assert_eq!(m.get(0, 1).value, 3.0);
        assert_eq!(m.get(1, 0).value, 3.0);
    }

    #[test]
    fn matrix_matches_per_pair_recomputation() {
        let balls = [
            ball(&[vec![0.0, 0.0], vec![1.0, 1.0]]),
            ball(&[vec![5.0, 0.0], vec![6.0, 2.0], vec![4.0, 1.0]]),
            ball(&[vec![-3.0, 7.0]]),
        ];
        let m = pairwise_ball_distances(&balls).unwrap();
        for i in 0..balls.len() {
            for j in 0..balls.len() {
                let d = ball_distance(&balls[i], &balls[j]).unwrap();
                assert_eq!(m.get(i, j).value, d.value);
                assert_eq!(m.get(i, j).overlapping, d.overlapping);
            }
        }
    }

    #[test]
    fn diameter_of_single_ball_is_twice_its_radius() {
        let b = ball(&[vec![0.0], vec![4.0]]);
        assert!((ball_set_diameter(std::slice::from_ref(&b)) - 4.0).abs() < 1e-12);
    }

    fn arb_points() -> impl Strategy<Value = Vec<Point>> {
        (1usize..5).prop_flat_map(|dim| {
            prop::collection::vec(
                prop::collection::vec(-100.0..100.0f64, dim..=dim),
                1..40,
            )
        })
    }

    proptest! {
        #[test]
        fn radii_are_ordered_and_members_contained(points in arb_points()) {
            let b = ball(&points);
            prop_assert!(b.radius_avg <= b.radius_max);
            prop_assert!(b.balance_degree >= 0.0);
            let tol = 1e-9 * ball_set_diameter(std::slice::from_ref(&b)).max(1.0);
            for p in &points {
                prop_assert!(euclidean(p, &b.center) <= b.radius_max + tol);
            }
        }

        #[test]
        fn fit_is_permutation_invariant(points in arb_points(), seed in 0u64..1000) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut ids: Vec<usize> = (0..points.len()).collect();
            let forward = fit_ball(&points, &ids).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            ids.shuffle(&mut rng);
            let shuffled = fit_ball(&points, &ids).unwrap();
            prop_assert_eq!(&forward.member_ids, &shuffled.member_ids);
            prop_assert_eq!(&forward.center, &shuffled.center);
            prop_assert_eq!(forward.radius_max, shuffled.radius_max);
            prop_assert_eq!(forward.radius_avg, shuffled.radius_avg);
        }

        #[test]
        fn distance_is_symmetric_and_translation_invariant(
            a in arb_points(),
            b in arb_points(),
            shift in -50.0..50.0f64,
        ) {
            prop_assume!(a[0].len() == b[0].len());
            let ball_a = ball(&a);
            let ball_b = ball(&b);
            let d_ab = ball_distance(&ball_a, &ball_b).unwrap();
            let d_ba = ball_distance(&ball_b, &ball_a).unwrap();
            prop_assert_eq!(d_ab.value, d_ba.value);

            let translate = |ps: &[Point]| -> Vec<Point> {
                ps.iter()
                    .map(|p| p.iter().map(|x| x + shift).collect())
                    .collect()
            };
            let ta = ball(&translate(&a));
            let tb = ball(&translate(&b));
            let d_t = ball_distance(&ta, &tb).unwrap();
            let scale = d_ab.value.abs().max(1.0);
            prop_assert!((d_t.value - d_ab.value).abs() <= 1e-9 * scale);
        }

        #[test]
        fn scaling_preserves_overlap_and_scales_distances(
            a in arb_points(),
            b in arb_points(),
            s in prop::sample::select(vec![0.01f64, 0.5, 1.0, 10.0, 1000.0]),
        ) {
            prop_assume!(a[0].len() == b[0].len());
            let scale_points = |ps: &[Point]| -> Vec<Point> {
                ps.iter()
                    .map(|p| p.iter().map(|x| x * s).collect())
                    .collect()
            };
            let d = ball_distance(&ball(&a), &ball(&b)).unwrap();
            let ds = ball_distance(&ball(&scale_points(&a)), &ball(&scale_points(&b))).unwrap();
            let tol = 1e-9 * (d.value.abs() * s).max(1e-300);
            prop_assert!((ds.value - d.value * s).abs() <= tol.max(1e-12 * s));
            // the overlap predicate may only flip on values within rounding of zero
            if d.value.abs() > 1e-9 * (ball_set_diameter(&[ball(&a), ball(&b)])).max(1.0) {
                prop_assert_eq!(ds.overlapping, d.overlapping);
            }
        }
    }
}

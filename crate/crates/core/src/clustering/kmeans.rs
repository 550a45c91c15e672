//! Lloyd's k-means with k-means++ seeding.

use rand::Rng;

use super::Partition;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::rng;

const MAX_ITERATIONS: usize = 100;
const SHIFT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct KMeansResult {
    pub partition: Partition,
    /// Sum of squared distances from each point to its centroid.
    pub cost: f64,
    pub iterations: usize,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Clusters the rows of `points` into `clusters` groups.
///
/// Initialization is k-means++ driven by a generator seeded with `seed`.
/// Lloyd iterations stop once no centroid moves more than `1e-8` or after
/// 100 iterations. A cluster that empties is re-seeded with the point farthest
/// from its current centroid. Assignment ties go to the lowest centroid index.
pub fn kmeans(points: &DenseMatrix, clusters: usize, seed: u64) -> Result<KMeansResult> {
    let n = points.rows();
    let d = points.cols();
    if clusters == 0 || clusters > n {
        return Err(Error::TooManyClusters {
            clusters,
            points: n,
        });
    }
    let mut rng = rng::seeded(seed);
    let mut centroids = init_plus_plus(points, clusters, &mut rng);
    let mut assign = vec![0usize; n];
    let mut iterations = 0;

    loop {
        iterations += 1;
        for (i, a) in assign.iter_mut().enumerate() {
            *a = nearest(&centroids, points.row(i)).0;
        }

        let mut sums = DenseMatrix::zeros(clusters, d);
        let mut counts = vec![0usize; clusters];
        for (i, &a) in assign.iter().enumerate() {
            counts[a] += 1;
            for (s, x) in sums.row_mut(a).iter_mut().zip(points.row(i)) {
                *s += x;
            }
        }
        for c in 0..clusters {
            if counts[c] == 0 {
                let far = farthest_point(points, &centroids, &assign);
                let old = assign[far];
                counts[old] -= 1;
                for (s, x) in sums.row_mut(old).iter_mut().zip(points.row(far)) {
                    *s -= x;
                }
                assign[far] = c;
                counts[c] = 1;
                sums.row_mut(c).copy_from_slice(points.row(far));
            }
        }

        let mut shift: f64 = 0.0;
        for c in 0..clusters {
            if counts[c] == 0 {
                continue;
            }
            let inv = 1.0 / counts[c] as f64;
            let new: Vec<f64> = sums.row(c).iter().map(|s| s * inv).collect();
            shift = shift.max(sq_dist(&new, centroids.row(c)).sqrt());
            centroids.row_mut(c).copy_from_slice(&new);
        }
        if shift <= SHIFT_TOLERANCE || iterations >= MAX_ITERATIONS {
            break;
        }
    }

    let cost = assign
        .iter()
        .enumerate()
        .map(|(i, &a)| sq_dist(points.row(i), centroids.row(a)))
        .sum();
    Ok(KMeansResult {
        partition: Partition::from_labels(&assign),
        cost,
        iterations,
    })
}

fn nearest(centroids: &DenseMatrix, x: &[f64]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for c in 0..centroids.rows() {
        let d = sq_dist(centroids.row(c), x);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

fn farthest_point(points: &DenseMatrix, centroids: &DenseMatrix, assign: &[usize]) -> usize {
    let mut best = (0, -1.0);
    for (i, &a) in assign.iter().enumerate() {
        let d = sq_dist(points.row(i), centroids.row(a));
        if d > best.1 {
            best = (i, d);
        }
    }
    best.0
}

fn init_plus_plus(points: &DenseMatrix, clusters: usize, rng: &mut impl Rng) -> DenseMatrix {
    let n = points.rows();
    let mut centroids = DenseMatrix::zeros(clusters, points.cols());
    let mut chosen = vec![false; n];
    let first = rng.random_range(0..n);
    chosen[first] = true;
    centroids.row_mut(0).copy_from_slice(points.row(first));
    let mut d2: Vec<f64> = (0..n)
        .map(|i| sq_dist(points.row(i), points.row(first)))
        .collect();

    for c in 1..clusters {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let target = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = None;
            for (i, &w) in d2.iter().enumerate() {
                acc += w;
                if w > 0.0 && acc >= target {
                    pick = Some(i);
                    break;
                }
            }
            pick.unwrap_or_else(|| d2.iter().rposition(|&w| w > 0.0).unwrap_or(0))
        } else {
            // all remaining points coincide with a centroid
            chosen.iter().position(|&c| !c).unwrap_or(0)
        };
        chosen[pick] = true;
        centroids.row_mut(c).copy_from_slice(points.row(pick));
        for (i, w) in d2.iter_mut().enumerate() {
            *w = w.min(sq_dist(points.row(i), points.row(pick)));
        }
    }
    centroids
}

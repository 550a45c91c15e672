//! Low-pass filtered feature clustering.
//!
//! Node features are smoothed by repeated application of `I − L_n / 2`
//! and the rows are clustered with k-means. The filter order `t` is chosen
//! by modularity.

use super::{kmeans, modularity, FeatureMatrix, Partition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::DenseMatrix;

/// One application of `I − L_n / 2 = (I + D^{-1/2} A D^{-1/2}) / 2`, using
/// the adjacency lists (no dense operator).
pub fn low_pass(g: &Graph, x: &DenseMatrix) -> Result<DenseMatrix> {
    if x.rows() != g.node_count() {
        return Err(Error::DimensionMismatch {
            expected: g.node_count(),
            found: x.rows(),
        });
    }
    let inv_sqrt = g.inv_sqrt_degrees();
    let mut out = DenseMatrix::zeros(x.rows(), x.cols());
    for v in 0..g.node_count() {
        let row = out.row_mut(v);
        for (o, &xv) in row.iter_mut().zip(x.row(v)) {
            *o = 0.5 * xv;
        }
        for &w in g.neighbors(v) {
            let a = 0.5 * inv_sqrt[v] * inv_sqrt[w];
            for (o, &xw) in row.iter_mut().zip(x.row(w)) {
                *o += a * xw;
            }
        }
    }
    Ok(out)
}

/// Clusters `(I − L_n/2)^t X̄` for `t = 1..=t_max` and returns the partition
/// with the largest modularity together with its `t` (ties go to the smaller `t`).
pub fn filtered_feature_partition(
    g: &Graph,
    features: &FeatureMatrix,
    clusters: usize,
    t_max: usize,
    seed: u64,
) -> Result<(Partition, usize)> {
    let (p, t, _) =
        filtered_feature_partition_scored(g, features, clusters, t_max, seed, |p| modularity(g, p))?;
    Ok((p, t))
}

/// [`filtered_feature_partition`] with an arbitrary score in place of modularity.
/// Returns the winning partition, its `t`, and its score.
pub fn filtered_feature_partition_scored(
    g: &Graph,
    features: &FeatureMatrix,
    clusters: usize,
    t_max: usize,
    seed: u64,
    score: impl Fn(&Partition) -> Result<f64>,
) -> Result<(Partition, usize, f64)> {
    if t_max == 0 {
        return Err(Error::Config("t_max must be at least 1".into()));
    }
    let mut h = features.matrix().clone();
    let mut best: Option<(Partition, usize, f64)> = None;
    for t in 1..=t_max {
        h = low_pass(g, &h)?;
        let p = kmeans(&h, clusters, seed)?.partition;
        let q = score(&p)?;
        if best.as_ref().is_none_or(|(_, _, bq)| q > *bq) {
            best = Some((p, t, q));
        }
    }
    Ok(best.expect("t_max >= 1"))
}

//! Graph partitions, modularity, and the built-in clusterers.
//!
//! Three clusterers are provided: a Louvain-style greedy modularity
//! optimizer, spectral embedding followed by k-means, and a low-pass
//! filtered-feature clusterer. Partitions computed elsewhere can be read with
//! [`crate::io::import_partition`].

mod embedding;
mod features;
mod filtered;
mod kmeans;
mod louvain;
mod select;

pub use embedding::spectral_embedding_partition;
pub use features::{random_feature_matrix, FeatureMatrix};
pub use filtered::{filtered_feature_partition, filtered_feature_partition_scored, low_pass};
pub use kmeans::{kmeans, KMeansResult};
pub use louvain::greedy_modularity_partition;
pub use select::{select_partition_by_modularity, ClusterMethod, Selection, DEFAULT_T_MAX};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Disjoint community labels covering every node, with ids dense in `0..J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Densifies arbitrary ids to `0..J`, preserving their ascending order.
    pub fn from_labels(raw: &[usize]) -> Self {
        let mut ids = raw.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let labels = raw
            .iter()
            .map(|l| ids.binary_search(l).unwrap_or(0))
            .collect();
        Self {
            labels,
            count: ids.len(),
        }
    }

    pub fn single(n: usize) -> Self {
        Self::from_labels(&vec![0; n])
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            labels: (0..n).collect(),
            count: n,
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// `J`, the number of nonempty communities.
    pub fn community_count(&self) -> usize {
        self.count
    }

    /// Members of each community, ascending.
    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.labels.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// Newman modularity
/// `Q = (1/2m) Σ_{i,j} (A_ij − d_i d_j / 2m) δ(c_i, c_j)`
/// over all ordered pairs, diagonal included.
///
/// Evaluated per community as `Σ_c (2 L_c − D_c² / 2m) / 2m`, where `L_c`
/// counts intra-community edges and `D_c` sums member degrees.
pub fn modularity(g: &Graph, p: &Partition) -> Result<f64> {
    if p.node_count() != g.node_count() {
        return Err(Error::DimensionMismatch {
            expected: g.node_count(),
            found: p.node_count(),
        });
    }
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let two_m = 2.0 * m as f64;
    let mut internal = vec![0usize; p.community_count()];
    let mut degree = vec![0usize; p.community_count()];
    for &(u, v) in g.edges() {
        if p.label(u) == p.label(v) {
            internal[p.label(u)] += 1;
        }
    }
    for v in 0..g.node_count() {
        degree[p.label(v)] += g.degree(v);
    }
    let q: f64 = internal
        .iter()
        .zip(&degree)
        .map(|(&l, &d)| {
            let d = d as f64;
            2.0 * l as f64 - d * d / two_m
        })
        .sum();
    Ok(q / two_m)
}

use super::{kmeans, Partition};
use crate::error::{Error, Result};
use crate::graph::{Graph, LaplacianKind};
use crate::linalg::DenseMatrix;
use crate::spectral::{eigendecompose, SpectralBasis};

/// k-means on the row-normalized leading `clusters` eigenvectors of `L_n`.
pub fn spectral_embedding_partition(g: &Graph, clusters: usize, seed: u64) -> Result<Partition> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let basis = eigendecompose(&g.laplacian(LaplacianKind::Normalized))?;
    partition_from_basis(&basis, clusters, seed)
}

/// Same as [`spectral_embedding_partition`] with a precomputed `L_n` basis.
pub(crate) fn partition_from_basis(
    basis: &SpectralBasis,
    clusters: usize,
    seed: u64,
) -> Result<Partition> {
    let n = basis.order();
    if clusters == 0 || clusters > n {
        return Err(Error::TooManyClusters {
            clusters,
            points: n,
        });
    }
    let mut rows = DenseMatrix::zeros(n, clusters);
    for v in 0..n {
        let src = &basis.node_row(v)[..clusters];
        let norm = src.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            for (dst, x) in rows.row_mut(v).iter_mut().zip(src) {
                *dst = x / norm;
            }
        }
    }
    Ok(kmeans(&rows, clusters, seed)?.partition)
}

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;

use super::embedding::partition_from_basis;
use super::{filtered_feature_partition, greedy_modularity_partition, modularity, FeatureMatrix, Partition};
use crate::error::{Error, Result};
use crate::graph::{Graph, LaplacianKind};
use crate::spectral::{eigendecompose, SpectralBasis};

/// Built-in clusterers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterMethod {
    /// Louvain-style greedy modularity; picks its own community count.
    Greedy,
    /// k-means on the leading eigenvectors of `L_n`.
    Spectral,
    /// k-means on low-pass filtered random features, filter order up to `t_max`.
    Filtered { t_max: usize },
}

pub const DEFAULT_T_MAX: usize = 10;

impl ClusterMethod {
    pub fn name(&self) -> &'static str {
        match self {
            ClusterMethod::Greedy => "greedy",
            ClusterMethod::Spectral => "spectral",
            ClusterMethod::Filtered { .. } => "filtered",
        }
    }

    pub fn needs_features(&self) -> bool {
        matches!(self, ClusterMethod::Filtered { .. })
    }
}

impl fmt::Display for ClusterMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClusterMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(ClusterMethod::Greedy),
            "spectral" => Ok(ClusterMethod::Spectral),
            "filtered" => Ok(ClusterMethod::Filtered {
                t_max: DEFAULT_T_MAX,
            }),
            other => Err(Error::Config(format!("unknown clustering method {other:?}"))),
        }
    }
}

/// Winner of a community-count sweep.
#[derive(Debug, Clone)]
pub struct Selection {
    pub partition: Partition,
    /// Number of nonempty communities in `partition`.
    pub count: usize,
    pub modularity: f64,
    /// `(requested J, modularity)` for every candidate, in sweep order.
    pub candidates: Vec<(usize, f64)>,
}

/// Runs `method` for every `J` in `range` and keeps the partition of highest
/// modularity; ties go to the smaller community count.
///
/// The greedy method fixes its own `J`, so it runs once and `range` is only
/// validated. `basis` may supply a precomputed `L_n` decomposition for the
/// spectral method; `features` is required by the filtered method.
pub fn select_partition_by_modularity(
    g: &Graph,
    method: ClusterMethod,
    range: RangeInclusive<usize>,
    seed: u64,
    basis: Option<&SpectralBasis>,
    features: Option<&FeatureMatrix>,
) -> Result<Selection> {
    if range.is_empty() {
        return Err(Error::EmptyRange);
    }
    let (lo, hi) = (*range.start(), *range.end());
    if lo == 0 {
        return Err(Error::Config("community counts start at 1".into()));
    }
    if hi > g.node_count() {
        return Err(Error::TooManyClusters {
            clusters: hi,
            points: g.node_count(),
        });
    }
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }

    let candidates: Vec<(usize, Partition)> = match method {
        ClusterMethod::Greedy => {
            let p = greedy_modularity_partition(g, seed)?;
            vec![(p.community_count(), p)]
        }
        ClusterMethod::Spectral => {
            let owned;
            let basis = match basis {
                Some(b) => b,
                None => {
                    owned = eigendecompose(&g.laplacian(LaplacianKind::Normalized))?;
                    &owned
                }
            };
            range
                .into_par_iter()
                .map(|j| partition_from_basis(basis, j, seed).map(|p| (j, p)))
                .collect::<Result<_>>()?
        }
        ClusterMethod::Filtered { t_max } => {
            let features = features.ok_or(Error::MissingCoordinates)?;
            range
                .into_par_iter()
                .map(|j| filtered_feature_partition(g, features, j, t_max, seed).map(|(p, _)| (j, p)))
                .collect::<Result<_>>()?
        }
    };

    let mut scored = Vec::with_capacity(candidates.len());
    for (j, p) in candidates {
        let q = modularity(g, &p)?;
        scored.push((j, p, q));
    }
    let summary = scored.iter().map(|(j, _, q)| (*j, *q)).collect();
    let (_, partition, q) = scored
        .into_iter()
        .reduce(|best, cand| {
            let better = cand.2 > best.2
                || (cand.2 == best.2 && cand.1.community_count() < best.1.community_count());
            if better {
                cand
            } else {
                best
            }
        })
        .expect("nonempty range");
    Ok(Selection {
        count: partition.community_count(),
        partition,
        modularity: q,
        candidates: summary,
    })
}

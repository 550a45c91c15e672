//! Partition of unity interpolation over enlarged communities.
//!
//! Each community `C_j` grows into the subdomain `V_j` of nodes within `R`
//! hops. A local variational-spline interpolant is fitted on the subgraph
//! induced by `V_j` (with its own `L_n` spectrum) and the local results are
//! blended with weights `φ^(j)` that are nonnegative, supported in `V_j`, and
//! sum to one at every node.
//!
//! The weights are Shepard-normalized linear bumps
//! `ψ_j(v) = max(0, 1 − dist(v, C_j) / (R + 1))`, so `R = 0` reduces to
//! community indicators.

use rayon::prelude::*;

use crate::clustering::Partition;
use crate::error::{Error, Result};
use crate::gbf::{gbf_interpolate, GbfSpec, SampleSet};
use crate::graph::{Graph, LaplacianKind};
use crate::spectral::{eigendecompose, Signal};

/// Overlapping subdomains grown from a partition.
#[derive(Debug, Clone, PartialEq)]
pub struct Cover {
    subdomains: Vec<Vec<usize>>,
    hops: Vec<Vec<usize>>,
    core: Partition,
    radius: usize,
}

impl Cover {
    pub fn len(&self) -> usize {
        self.subdomains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subdomains.is_empty()
    }

    /// `V_j`, ascending.
    pub fn subdomain(&self, j: usize) -> &[usize] {
        &self.subdomains[j]
    }

    pub fn subdomains(&self) -> &[Vec<usize>] {
        &self.subdomains
    }

    /// Hop distance from each node of `V_j` to `C_j`, aligned with [`Cover::subdomain`].
    pub fn hops(&self, j: usize) -> &[usize] {
        &self.hops[j]
    }

    pub fn core(&self) -> &Partition {
        &self.core
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn node_count(&self) -> usize {
        self.core.node_count()
    }

    pub fn contains(&self, j: usize, v: usize) -> bool {
        self.subdomains[j].binary_search(&v).is_ok()
    }
}

/// `V_j = {v : hops(v, C_j) ≤ R}`.
pub fn enlarge_cover(g: &Graph, partition: &Partition, radius: usize) -> Result<Cover> {
    if partition.node_count() != g.node_count() {
        return Err(Error::DimensionMismatch {
            expected: g.node_count(),
            found: partition.node_count(),
        });
    }
    let (subdomains, hops) = partition
        .communities()
        .iter()
        .map(|core| {
            g.ball(core, radius)
                .map(|ball| ball.into_iter().unzip::<_, _, Vec<_>, Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    Ok(Cover {
        subdomains,
        hops,
        core: partition.clone(),
        radius,
    })
}

/// The weights `φ^(1..J)`, one full-length signal per subdomain.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionOfUnity {
    weights: Vec<Signal>,
}

impl PartitionOfUnity {
    pub fn weights(&self) -> &[Signal] {
        &self.weights
    }

    pub fn weight(&self, j: usize) -> &Signal {
        &self.weights[j]
    }
}

pub fn pou_weights(cover: &Cover) -> PartitionOfUnity {
    let n = cover.node_count();
    let denom_r = (cover.radius() + 1) as f64;
    let mut weights: Vec<Signal> = vec![Signal::zeros(n); cover.len()];
    let mut total = vec![0.0; n];
    for (j, w) in weights.iter_mut().enumerate() {
        let w = w.as_mut_slice();
        for (&v, &d) in cover.subdomain(j).iter().zip(cover.hops(j)) {
            let bump = 1.0 - d as f64 / denom_r;
            w[v] = bump;
            total[v] += bump;
        }
    }
    for w in &mut weights {
        for (x, t) in w.as_mut_slice().iter_mut().zip(&total) {
            if *x > 0.0 {
                *x /= t;
            }
        }
    }
    PartitionOfUnity { weights }
}

#[derive(Debug, Clone)]
pub struct PumOutput {
    pub signal: Signal,
    /// Subdomains that held no sample; their local interpolant is zero.
    pub empty_subdomains: Vec<usize>,
    /// Largest Cholesky jitter used by any local solve.
    pub max_jitter: f64,
}

/// Fits a local interpolant on each subdomain and blends them.
///
/// Local solves run in parallel; the blend is accumulated in subdomain order,
/// so the result does not depend on scheduling.
pub fn pum_interpolate(
    g: &Graph,
    cover: &Cover,
    pou: &PartitionOfUnity,
    spec: GbfSpec,
    samples: &SampleSet,
) -> Result<PumOutput> {
    let n = g.node_count();
    if cover.node_count() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cover.node_count(),
        });
    }
    if pou.weights().len() != cover.len() {
        return Err(Error::DimensionMismatch {
            expected: cover.len(),
            found: pou.weights().len(),
        });
    }
    for &w in samples.nodes() {
        if w >= n {
            return Err(Error::IndexOutOfRange { index: w, n });
        }
    }

    let locals: Vec<Option<(Vec<f64>, f64)>> = (0..cover.len())
        .into_par_iter()
        .map(|j| {
            local_interpolant(g, cover.subdomain(j), spec, samples)
                .map_err(|e| Error::Subdomain {
                    subdomain: j,
                    source: Box::new(e),
                })
        })
        .collect::<Result<_>>()?;

    let mut signal = Signal::zeros(n);
    let mut empty_subdomains = Vec::new();
    let mut max_jitter: f64 = 0.0;
    let out = signal.as_mut_slice();
    for (j, local) in locals.into_iter().enumerate() {
        let Some((values, jitter)) = local else {
            empty_subdomains.push(j);
            continue;
        };
        max_jitter = max_jitter.max(jitter);
        let phi = pou.weight(j);
        for (&v, x) in cover.subdomain(j).iter().zip(values) {
            out[v] += phi[v] * x;
        }
    }
    Ok(PumOutput {
        signal,
        empty_subdomains,
        max_jitter,
    })
}

/// Local interpolant on the subgraph induced by `nodes` (ascending), as values
/// aligned with `nodes`; `None` when no sample lies in the subdomain.
fn local_interpolant(
    g: &Graph,
    nodes: &[usize],
    spec: GbfSpec,
    samples: &SampleSet,
) -> Result<Option<(Vec<f64>, f64)>> {
    let mut local_nodes = Vec::new();
    let mut local_values = Vec::new();
    for (&w, &x) in samples.nodes().iter().zip(samples.values()) {
        if let Ok(i) = nodes.binary_search(&w) {
            local_nodes.push(i);
            local_values.push(x);
        }
    }
    if local_nodes.is_empty() {
        return Ok(None);
    }
    let (sub, _) = g.induced_subgraph(nodes)?;
    let basis = eigendecompose(&sub.laplacian(LaplacianKind::Normalized))?;
    let local = SampleSet::new(local_nodes, local_values, sub.node_count())?;
    let it = gbf_interpolate(&basis, spec, &local)?;
    Ok(Some((it.signal.into_inner(), it.jitter)))
}

use std::time::Instant;

use rand::seq::index;
use rayon::prelude::*;

use super::config::{ExperimentConfig, GraphSource, MethodKind, MethodSpec, DEFAULT_JMAX};
use super::metrics::{rmae, rrmse};
use super::report::ReportRow;
use crate::clustering::{modularity, random_feature_matrix, select_partition_by_modularity, FeatureMatrix, Partition};
use crate::error::{Error, Result};
use crate::gbf::{GbfSpec, SampleSet};
use crate::graph::{generate_geometric, generate_grid, Graph, LaplacianKind};
use crate::io;
use crate::pum::{enlarge_cover, pou_weights, pum_interpolate, PumOutput};
use crate::rng::{self, Stream};
use crate::spectral::{eigendecompose, Signal, SpectralBasis};

/// `count` distinct nodes drawn uniformly without replacement, ascending.
pub fn sample_nodes(g: &Graph, count: usize, seed: u64) -> Result<Vec<usize>> {
    let n = g.node_count();
    if count > n {
        return Err(Error::SampleTooLarge { requested: count, n });
    }
    if count == 0 {
        return Err(Error::Config("sample count must be at least 1".into()));
    }
    let mut rng = rng::seeded(seed);
    let mut nodes = index::sample(&mut rng, n, count).into_vec();
    nodes.sort_unstable();
    Ok(nodes)
}

/// Everything shared by the rows of one experiment.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub graph: Graph,
    pub basis: SpectralBasis,
    pub signal: Signal,
    pub samples: SampleSet,
    pub features: Option<FeatureMatrix>,
}

/// Full result of one method row.
#[derive(Debug, Clone)]
pub struct MethodRun {
    pub row: ReportRow,
    pub partition: Partition,
    pub output: PumOutput,
}

pub fn load_graph_source(source: &GraphSource, seed: u64) -> Result<Graph> {
    match source {
        GraphSource::Files { edges, coords } => io::load_graph(edges, coords.as_deref()),
        GraphSource::Grid { rows, cols } => generate_grid(*rows, *cols),
        GraphSource::Geometric { n, radius } => {
            generate_geometric(*n, *radius, rng::substream_seed(seed, Stream::Generator))
        }
    }
}

/// Builds the graph, its spectrum, the test signal `Σ u_i`, the sample set and,
/// when a method needs them, the random features.
pub fn prepare(cfg: &ExperimentConfig) -> Result<Prepared> {
    cfg.validate_static()?;
    let graph = load_graph_source(&cfg.graph, cfg.seed).map_err(|e| e.in_stage("graph"))?;
    let n = graph.node_count();
    if cfg.samples > n {
        return Err(Error::SampleTooLarge {
            requested: cfg.samples,
            n,
        }
        .in_stage("sampling"));
    }
    let basis = eigendecompose(&graph.laplacian(LaplacianKind::Normalized))
        .map_err(|e| e.in_stage("spectral"))?;
    let signal = basis
        .leading_sum_signal(cfg.signal_count)
        .map_err(|e| e.in_stage("signal"))?;
    let nodes = sample_nodes(&graph, cfg.samples, rng::substream_seed(cfg.seed, Stream::Sampling))
        .map_err(|e| e.in_stage("sampling"))?;
    let samples = SampleSet::from_signal(&nodes, &signal).map_err(|e| e.in_stage("sampling"))?;
    let needs_features = cfg.methods.iter().any(|m| match &m.kind {
        MethodKind::Builtin(b) => b.needs_features(),
        MethodKind::Import(_) => false,
    });
    let features = if needs_features {
        Some(
            random_feature_matrix(
                graph.coords(),
                cfg.features,
                rng::substream_seed(cfg.seed, Stream::Features),
            )
            .map_err(|e| e.in_stage("features"))?,
        )
    } else {
        None
    };
    Ok(Prepared {
        graph,
        basis,
        signal,
        samples,
        features,
    })
}

pub fn run_method(prepared: &Prepared, cfg: &ExperimentConfig, method: &MethodSpec) -> Result<MethodRun> {
    let start = Instant::now();
    let g = &prepared.graph;
    let n = g.node_count();
    let (partition, q) = match &method.kind {
        MethodKind::Builtin(m) => {
            let jmax = cfg.jmax.unwrap_or(DEFAULT_JMAX).min(n);
            if cfg.jmin > jmax {
                return Err(Error::Config(format!(
                    "jmin {} exceeds the largest usable J {jmax}",
                    cfg.jmin
                ))
                .in_stage("clustering"));
            }
            let sel = select_partition_by_modularity(
                g,
                *m,
                cfg.jmin..=jmax,
                rng::substream_seed(cfg.seed, Stream::Clusterer),
                Some(&prepared.basis),
                prepared.features.as_ref(),
            )
            .map_err(|e| e.in_stage("clustering"))?;
            (sel.partition, sel.modularity)
        }
        MethodKind::Import(path) => {
            let p = io::import_partition(path, n).map_err(|e| e.in_stage("clustering"))?;
            let q = modularity(g, &p).map_err(|e| e.in_stage("clustering"))?;
            (p, q)
        }
    };
    let cover = enlarge_cover(g, &partition, cfg.radius).map_err(|e| e.in_stage("cover"))?;
    let pou = pou_weights(&cover);
    let spec = GbfSpec::variational_spline(cfg.epsilon, cfg.exponent);
    let output = pum_interpolate(g, &cover, &pou, spec, &prepared.samples)
        .map_err(|e| e.in_stage("interpolation"))?;
    let row = ReportRow {
        method: method.label.clone(),
        communities: partition.community_count(),
        modularity: q,
        rmae: rmae(&prepared.signal, &output.signal).map_err(|e| e.in_stage("metrics"))?,
        rrmse: rrmse(&prepared.signal, &output.signal).map_err(|e| e.in_stage("metrics"))?,
        wall_time_ms: if cfg.timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        },
    };
    Ok(MethodRun {
        row,
        partition,
        output,
    })
}

/// Runs every configured method; rows come back in config order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    let prepared = prepare(cfg)?;
    cfg.methods
        .par_iter()
        .map(|m| run_method(&prepared, cfg, m).map(|r| r.row))
        .collect()
}

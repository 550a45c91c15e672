//! Louvain-style greedy modularity maximization.

use rand::seq::SliceRandom;

use super::Partition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

const MIN_GAIN: f64 = 1e-12;
const MAX_PASSES: usize = 1000;

/// Weighted graph used at every aggregation level. `self_loops[v]` holds the
/// total weight of edges folded into `v`; each contributes `2w` to `v`'s degree.
struct Level {
    adjacency: Vec<Vec<(usize, f64)>>,
    self_loops: Vec<f64>,
}

impl Level {
    fn from_graph(g: &Graph) -> Self {
        let adjacency = (0..g.node_count())
            .map(|v| g.neighbors(v).iter().map(|&w| (w, 1.0)).collect())
            .collect();
        Self {
            adjacency,
            self_loops: vec![0.0; g.node_count()],
        }
    }

    fn len(&self) -> usize {
        self.adjacency.len()
    }

    fn degree(&self, v: usize) -> f64 {
        self.adjacency[v].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.self_loops[v]
    }

    fn aggregate(&self, community: &[usize], count: usize) -> Level {
        let mut self_loops = vec![0.0; count];
        let mut maps: Vec<std::collections::BTreeMap<usize, f64>> = vec![Default::default(); count];
        for v in 0..self.len() {
            let cv = community[v];
            self_loops[cv] += self.self_loops[v];
            for &(w, weight) in &self.adjacency[v] {
                let cw = community[w];
                if cv == cw {
                    // each internal edge is seen from both ends
                    self_loops[cv] += 0.5 * weight;
                } else {
                    *maps[cv].entry(cw).or_insert(0.0) += weight;
                }
            }
        }
        Level {
            adjacency: maps.into_iter().map(|m| m.into_iter().collect()).collect(),
            self_loops,
        }
    }
}

/// Repeated local moving plus aggregation until no move improves modularity
/// by more than `1e-12`. Node visiting order is shuffled by a generator
/// seeded from `seed`, so the result is reproducible.
pub fn greedy_modularity_partition(g: &Graph, seed: u64) -> Result<Partition> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let two_m = 2.0 * g.edge_count() as f64;
    let mut rng = rng::seeded(seed);
    let mut level = Level::from_graph(g);
    // community of every original node
    let mut membership: Vec<usize> = (0..g.node_count()).collect();

    loop {
        let (community, moved) = local_moving(&level, two_m, &mut rng);
        if !moved {
            break;
        }
        let (community, count) = compact(&community);
        for c in &mut membership {
            *c = community[*c];
        }
        if count == level.len() {
            break;
        }
        level = level.aggregate(&community, count);
    }
    Ok(Partition::from_labels(&membership))
}

fn compact(community: &[usize]) -> (Vec<usize>, usize) {
    let mut remap = vec![usize::MAX; community.len()];
    let mut next = 0;
    let out = community
        .iter()
        .map(|&c| {
            if remap[c] == usize::MAX {
                remap[c] = next;
                next += 1;
            }
            remap[c]
        })
        .collect();
    (out, next)
}

fn local_moving(level: &Level, two_m: f64, rng: &mut impl rand::Rng) -> (Vec<usize>, bool) {
    let n = level.len();
    let degree: Vec<f64> = (0..n).map(|v| level.degree(v)).collect();
    let mut community: Vec<usize> = (0..n).collect();
    let mut total: Vec<f64> = degree.clone();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    // scratch: weight from the current node into each community
    let mut link = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut any_move = false;

    for _ in 0..MAX_PASSES {
        let mut moved = false;
        for &v in &order {
            let own = community[v];
            let kv = degree[v];
            touched.clear();
            for &(w, weight) in &level.adjacency[v] {
                let c = community[w];
                if link[c] == 0.0 {
                    touched.push(c);
                }
                link[c] += weight;
            }
            total[own] -= kv;
            // gain of inserting v into c, up to a constant shared by all c
            let gain = |c: usize, link_c: f64| link_c - total[c] * kv / two_m;
            let mut best = own;
            let mut best_gain = gain(own, link[own]);
            let stay_gain = best_gain;
            for &c in &touched {
                if c == own {
                    continue;
                }
                let g = gain(c, link[c]);
                if g > best_gain || (g == best_gain && c < best) {
                    best = c;
                    best_gain = g;
                }
            }
            // ΔQ = (gain difference) / m
            if best != own && (best_gain - stay_gain) / (0.5 * two_m) > MIN_GAIN {
                community[v] = best;
                moved = true;
                any_move = true;
            } else {
                best = own;
            }
            total[best] += kv;
            for &c in &touched {
                link[c] = 0.0;
            }
            link[own] = 0.0;
        }
        if !moved {
            break;
        }
    }
    (community, any_move)
}

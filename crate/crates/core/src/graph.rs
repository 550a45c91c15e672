//! Simple undirected graphs, their Laplacians, BFS hop distances and subgraphs.

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

pub type Point = [f64; 2];

/// A simple undirected graph on nodes `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted lexicographically.
/// Adjacency lists are sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    coords: Option<Vec<Point>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianKind {
    /// `D - A`
    Combinatorial,
    /// `I - D^{-1/2} A D^{-1/2}`, isolated nodes get an identity row.
    Normalized,
}

impl Graph {
    /// Builds a simple graph, merging duplicate edges in either orientation.
    pub fn new(n: usize, edge_list: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edge_list {
            if u >= n {
                return Err(Error::IndexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            edges,
            adjacency,
            coords: None,
        })
    }

    pub fn with_coords(mut self, coords: Vec<Point>) -> Result<Self> {
        if coords.len() != self.n {
            return Err(Error::CoordCountMismatch {
                expected: self.n,
                found: coords.len(),
            });
        }
        self.coords = Some(coords);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn coords(&self) -> Option<&[Point]> {
        self.coords.as_deref()
    }

    pub fn adjacency_matrix(&self) -> DenseMatrix {
        let mut a = DenseMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    pub fn laplacian(&self, kind: LaplacianKind) -> DenseMatrix {
        let n = self.n;
        let mut l = DenseMatrix::zeros(n, n);
        match kind {
            LaplacianKind::Combinatorial => {
                for v in 0..n {
                    l[(v, v)] = self.degree(v) as f64;
                }
                for &(u, v) in &self.edges {
                    l[(u, v)] = -1.0;
                    l[(v, u)] = -1.0;
                }
            }
            LaplacianKind::Normalized => {
                let inv_sqrt = self.inv_sqrt_degrees();
                for v in 0..n {
                    l[(v, v)] = 1.0;
                }
                for &(u, v) in &self.edges {
                    let w = -inv_sqrt[u] * inv_sqrt[v];
                    l[(u, v)] = w;
                    l[(v, u)] = w;
                }
            }
        }
        l
    }

    /// `d_v^{-1/2}`, with `0^{-1/2}` read as 0.
    pub fn inv_sqrt_degrees(&self) -> Vec<f64> {
        self.adjacency
            .iter()
            .map(|a| {
                if a.is_empty() {
                    0.0
                } else {
                    1.0 / (a.len() as f64).sqrt()
                }
            })
            .collect()
    }

    /// Multi-source BFS hop counts.
    pub fn hop_distances(&self, sources: &[usize]) -> Result<HopDistances> {
        if sources.is_empty() {
            return Err(Error::EmptySourceSet);
        }
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if s >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: s,
                    n: self.n,
                });
            }
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let next = dist[u].map(|d| d + 1);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        Ok(HopDistances { dist })
    }

    /// BFS bounded to `radius` hops; returns `(node, hops)` pairs sorted by node.
    pub fn ball(&self, sources: &[usize], radius: usize) -> Result<Vec<(usize, usize)>> {
        if sources.is_empty() {
            return Err(Error::EmptySourceSet);
        }
        let mut dist: Vec<Option<usize>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        let mut reached = Vec::new();
        for &s in sources {
            if s >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: s,
                    n: self.n,
                });
            }
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
                reached.push(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            if d == radius {
                continue;
            }
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                    reached.push(w);
                }
            }
        }
        reached.sort_unstable();
        Ok(reached
            .into_iter()
            .map(|v| (v, dist[v].unwrap_or(0)))
            .collect())
    }

    /// Subgraph induced by `nodes`. The returned map sends local index `i` to the
    /// global node `map[i]`; local order follows ascending global index.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<(Graph, Vec<usize>)> {
        if nodes.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        let mut map = nodes.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            if v >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    n: self.n,
                });
            }
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in map.iter().enumerate() {
            for &w in &self.adjacency[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        let mut sub = Graph::new(map.len(), edges)?;
        if let Some(coords) = &self.coords {
            sub.coords = Some(map.iter().map(|&v| coords[v]).collect());
        }
        Ok((sub, map))
    }
}

/// Per-node hop counts from a source set; `None` marks unreachable nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopDistances {
    dist: Vec<Option<usize>>,
}

impl HopDistances {
    pub fn get(&self, v: usize) -> Option<usize> {
        self.dist[v]
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.dist
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }
}

/// 4-neighbour lattice with `rows · cols` nodes; node `r · cols + c` sits at `(c, r)`.
pub fn generate_grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyGraph);
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::with_capacity(rows * (cols - 1) + cols * (rows - 1));
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    let coords = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| [c as f64, r as f64]))
        .collect();
    Graph::new(rows * cols, edges)?.with_coords(coords)
}

/// Random geometric graph in the unit square.
///
/// Points are drawn as `(x, y)` pairs of uniform `[0, 1)` samples from a
/// `ChaCha8Rng` seeded with `seed`; nodes are joined when their Euclidean
/// distance is at most `radius`.
pub fn generate_geometric(n: usize, radius: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(radius > 0.0) {
        return Err(Error::Config(format!("radius must be positive, got {radius}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Point> = (0..n)
        .map(|_| [rng.random::<f64>(), rng.random::<f64>()])
        .collect();
    let r2 = radius * radius;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = points[i][0] - points[j][0];
            let dy = points[i][1] - points[j][1];
            if dx * dx + dy * dy <= r2 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges)?.with_coords(points)
}

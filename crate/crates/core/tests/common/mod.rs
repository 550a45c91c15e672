//! Independent oracles and random inputs shared by the integration tests.
//!
//! Nothing here calls the eigensolver or the fast code paths under test.

#![allow(dead_code)]

use gbf_pum::clustering::Partition;
use gbf_pum::graph::Graph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi style graph with edge probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Random graph guaranteed connected: a random spanning tree plus extra edges.
pub fn random_connected_graph(n: usize, extra_p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < extra_p {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn random_labels(n: usize, max_communities: usize, rng: &mut impl Rng) -> Vec<usize> {
    let j = rng.random_range(1..=max_communities.min(n));
    (0..n).map(|_| rng.random_range(0..j)).collect()
}

/// Distinct sorted nodes, chosen by a partial Fisher–Yates shuffle.
pub fn random_nodes(n: usize, count: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    for i in 0..count {
        let j = rng.random_range(i..n);
        all.swap(i, j);
    }
    let mut out = all[..count].to_vec();
    out.sort_unstable();
    out
}

pub fn dense_adjacency(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut a = vec![vec![0.0; n]; n];
    for &(u, v) in g.edges() {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    a
}

/// `I − D^{-1/2} A D^{-1/2}` built entry by entry from the adjacency matrix.
pub fn normalized_laplacian(g: &Graph) -> Vec<Vec<f64>> {
    let a = dense_adjacency(g);
    let n = a.len();
    let d: Vec<f64> = a.iter().map(|r| r.iter().sum()).collect();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let scale = if d[i] > 0.0 && d[j] > 0.0 {
                a[i][j] / (d[i] * d[j]).sqrt()
            } else {
                0.0
            };
            l[i][j] = if i == j { 1.0 } else { 0.0 } - scale;
        }
    }
    l
}

/// Ordered-pair double sum `(1/2m) Σ_ij (A_ij − d_i d_j / 2m) δ(c_i, c_j)`.
pub fn brute_force_modularity(g: &Graph, labels: &[usize]) -> f64 {
    let a = dense_adjacency(g);
    let n = a.len();
    let d: Vec<f64> = a.iter().map(|r| r.iter().sum()).collect();
    let two_m: f64 = d.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - d[i] * d[j] / two_m;
            }
        }
    }
    q / two_m
}

/// All-pairs hop distances; `None` when unreachable.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.node_count();
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for &(u, v) in g.edges() {
        d[u][v] = Some(1);
        d[v][u] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Gauss–Jordan inverse with partial pivoting.
pub fn invert(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        assert!(p.abs() > 1e-300, "singular matrix");
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f != 0.0 {
                    for j in 0..n {
                        a[r][j] -= f * a[col][j];
                        inv[r][j] -= f * inv[col][j];
                    }
                }
            }
        }
    }
    inv
}

pub fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let p = b[0].len();
    let mut c = vec![vec![0.0; p]; n];
    for i in 0..n {
        for k in 0..b.len() {
            for j in 0..p {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

/// Double-double number `hi + lo`, about 32 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd { hi: s, lo: (a - (s - bb)) + (b - bb) }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        quick_two_sum(s.hi, s.lo + self.lo + o.lo)
    }

    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::from(q1)));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul(Dd::from(q2)));
        let q3 = r.hi / o.hi;
        quick_two_sum(q1, q2).add(Dd::from(q3))
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let x = self.hi.sqrt();
        let y = Dd::from(x);
        let r = self.sub(y.mul(y));
        y.add(Dd::from(r.hi / (2.0 * x)))
    }
}

/// Gauss–Jordan inverse with partial pivoting in double-double arithmetic.
pub fn invert_dd(m: &[Vec<Dd>]) -> Vec<Vec<Dd>> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut inv: Vec<Vec<Dd>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Dd::ONE } else { Dd::ZERO }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].hi.abs().total_cmp(&a[y][col].hi.abs()))
            .unwrap();
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] = a[col][j].div(p);
            inv[col][j] = inv[col][j].div(p);
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                for j in 0..n {
                    a[r][j] = a[r][j].sub(f.mul(a[col][j]));
                    inv[r][j] = inv[r][j].sub(f.mul(inv[col][j]));
                }
            }
        }
    }
    inv
}

/// `(εI + L_n)^{-s}` for integer `s ≥ 1`, by explicit inversion in
/// double-double arithmetic (entries of `L_n` formed from exact degree
/// products), rounded to `f64` at the end.
pub fn spline_kernel_oracle(g: &Graph, epsilon: f64, s: u32) -> Vec<Vec<f64>> {
    let a = dense_adjacency(g);
    let n = a.len();
    let d: Vec<f64> = a.iter().map(|r| r.iter().sum()).collect();
    let m: Vec<Vec<Dd>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let diagonal = if i == j { Dd::ONE.add(Dd::from(epsilon)) } else { Dd::ZERO };
                    if a[i][j] == 0.0 {
                        diagonal
                    } else {
                        diagonal.sub(Dd::ONE.div(Dd::from(d[i] * d[j]).sqrt()))
                    }
                })
                .collect()
        })
        .collect();
    let inv = invert_dd(&m);
    let mut k = inv.clone();
    for _ in 1..s {
        k = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Dd::ZERO, |acc, l| acc.add(k[i][l].mul(inv[l][j]))))
                    .collect()
            })
            .collect();
    }
    k.iter().map(|r| r.iter().map(|x| x.to_f64()).collect()).collect()
}

/// Interpolates on a whole graph with a given dense kernel: solve `K_WW c = x`
/// by Gaussian elimination and return `K_VW c`.
pub fn dense_kernel_interpolation(k: &[Vec<f64>], nodes: &[usize], values: &[f64]) -> Vec<f64> {
    let kww: Vec<Vec<f64>> = nodes
        .iter()
        .map(|&a| nodes.iter().map(|&b| k[a][b]).collect())
        .collect();
    let inv = invert(&kww);
    let c: Vec<f64> = inv
        .iter()
        .map(|row| row.iter().zip(values).map(|(a, b)| a * b).sum())
        .collect();
    (0..k.len())
        .map(|v| nodes.iter().zip(&c).map(|(&w, ci)| k[v][w] * ci).sum())
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn partition(labels: &[usize]) -> Partition {
    Partition::from_labels(labels)
}

/// Node count and a raw edge list that may contain duplicates, both
/// orientations and loops (loops are dropped by [`arb_graph`]).
pub fn arb_edge_list(min_n: usize, max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (min_n..=max_n).prop_flat_map(|n| {
        let max_edges = (n * (n - 1) / 2).min(4 * n);
        (Just(n), prop::collection::vec((0..n, 0..n), 0..=max_edges))
    })
}

/// Small simple graph with shrinkable structure.
pub fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    arb_edge_list(min_n, max_n).prop_map(|(n, edges)| {
        Graph::new(n, edges.into_iter().filter(|(u, v)| u != v)).unwrap()
    })
}

/// Graph together with labels in `0..J` for some `J ≤ max_communities`.
pub fn arb_labeled_graph(
    min_n: usize,
    max_n: usize,
    max_communities: usize,
) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(min_n, max_n).prop_flat_map(move |g| {
        let n = g.node_count();
        let labels = prop::collection::vec(0..max_communities.min(n), n);
        (Just(g), labels)
    })
}

/// Larger graph drawn from a seed: sparse, connected or not.
pub fn arb_seeded_graph(min_n: usize, max_n: usize, connected: bool) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, 1.0f64..5.0, any::<u64>()).prop_map(move |(n, degree, seed)| {
        let mut r = rng(seed);
        if connected {
            random_connected_graph(n, (degree - 1.0).max(0.0) / n as f64, &mut r)
        } else {
            random_graph(n, degree / n as f64, &mut r)
        }
    })
}

/// Graph, distinct sample nodes, and values in `[-2, 2]`.
pub fn arb_sampled_graph(
    min_n: usize,
    max_n: usize,
    connected: bool,
) -> impl Strategy<Value = (Graph, Vec<usize>, Vec<f64>)> {
    (arb_seeded_graph(min_n, max_n, connected), any::<u64>()).prop_map(|(g, seed)| {
        let mut r = rng(seed);
        let n = g.node_count();
        let count = r.random_range(1..=n);
        let nodes = random_nodes(n, count, &mut r);
        let values = nodes.iter().map(|_| r.random_range(-2.0..2.0)).collect();
        (g, nodes, values)
    })
}

//! Symmetric eigendecomposition and the graph Fourier transform.
//!
//! The eigensolver is a cyclic Jacobi iteration on the dense matrix. It is
//! deterministic: rotations are applied in a fixed `(p, q)` order, eigenpairs
//! are sorted ascending by a stable sort, and each eigenvector is signed so
//! that its first entry with magnitude above [`SIGN_THRESHOLD`] is positive.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::linalg::{dot, DenseMatrix};

pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
pub const CONVERGENCE_TOLERANCE: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;
pub const SIGN_THRESHOLD: f64 = 1e-12;

/// A real signal on the nodes of a graph.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Signal(Vec<f64>);

impl Signal {
    pub fn zeros(n: usize) -> Self {
        Signal(vec![0.0; n])
    }

    /// Unit impulse at node `v`.
    pub fn delta(n: usize, v: usize) -> Self {
        let mut s = Self::zeros(n);
        s.0[v] = 1.0;
        s
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn norm2(&self) -> f64 {
        dot(&self.0, &self.0).sqrt()
    }
}

impl From<Vec<f64>> for Signal {
    fn from(v: Vec<f64>) -> Self {
        Signal(v)
    }
}

impl FromIterator<f64> for Signal {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        Signal(iter.into_iter().collect())
    }
}

impl Deref for Signal {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Ascending eigenvalues and orthonormal eigenvectors of a symmetric matrix.
///
/// `eigenvectors` is row-major `n × n` with column `k` holding `u_k`, so row
/// `v` lists `(u_1(v), …, u_n(v))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBasis {
    eigenvalues: Vec<f64>,
    eigenvectors: DenseMatrix,
    sweeps: usize,
}

impl SpectralBasis {
    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// The matrix `U`.
    pub fn eigenvectors(&self) -> &DenseMatrix {
        &self.eigenvectors
    }

    /// `u_k` as a signal (0-based `k`).
    pub fn eigenvector(&self, k: usize) -> Signal {
        (0..self.order())
            .map(|v| self.eigenvectors[(v, k)])
            .collect()
    }

    /// Row `v` of `U`: every eigenvector evaluated at node `v`.
    pub fn node_row(&self, v: usize) -> &[f64] {
        self.eigenvectors.row(v)
    }

    /// Number of Jacobi sweeps the decomposition took.
    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.order() {
            return Err(Error::DimensionMismatch {
                expected: self.order(),
                found: len,
            });
        }
        Ok(())
    }

    /// `x̂ = Uᵀ x`.
    pub fn fourier(&self, x: &[f64]) -> Result<Signal> {
        self.check_len(x.len())?;
        let mut out = vec![0.0; self.order()];
        for (v, &xv) in x.iter().enumerate() {
            if xv == 0.0 {
                continue;
            }
            for (o, &u) in out.iter_mut().zip(self.node_row(v)) {
                *o += xv * u;
            }
        }
        Ok(Signal(out))
    }

    /// `x = U x̂`.
    pub fn inverse_fourier(&self, xhat: &[f64]) -> Result<Signal> {
        self.check_len(xhat.len())?;
        Ok((0..self.order())
            .map(|v| dot(self.node_row(v), xhat))
            .collect())
    }

    /// Graph convolution `x * y = U diag(x̂) Uᵀ y`.
    pub fn convolve(&self, x: &[f64], y: &[f64]) -> Result<Signal> {
        let xhat = self.fourier(x)?;
        let mut yhat = self.fourier(y)?;
        for (a, b) in yhat.0.iter_mut().zip(xhat.iter()) {
            *a *= b;
        }
        self.inverse_fourier(&yhat)
    }

    /// `Σ_{i=1}^{count} u_i`.
    pub fn leading_sum_signal(&self, count: usize) -> Result<Signal> {
        let n = self.order();
        if count == 0 || count > n {
            return Err(Error::CountOutOfRange { count, n });
        }
        Ok((0..n)
            .map(|v| self.node_row(v)[..count].iter().sum())
            .collect())
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Converges when the off-diagonal Frobenius norm falls to
/// `1e-12 · ‖M‖_F`, then runs one polishing sweep; gives up after
/// [`MAX_SWEEPS`] sweeps without converging.
pub fn eigendecompose(m: &DenseMatrix) -> Result<SpectralBasis> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    if let Some((row, col, gap)) = m.max_asymmetry() {
        if gap > SYMMETRY_TOLERANCE {
            return Err(Error::NotSymmetric { row, col, gap });
        }
    }
    let n = m.rows();
    let mut a = m.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    let scale = m.frobenius_norm();
    let target = CONVERGENCE_TOLERANCE * scale;
    // Rotations below this size cannot move the off-diagonal norm past `target`.
    let negligible = if n > 1 {
        1e-3 * target / n as f64
    } else {
        0.0
    };
    // Row k of `vt` is the k-th eigenvector, so rotations touch contiguous memory.
    let mut vt = DenseMatrix::identity(n);

    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&a);
    while off > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        sweep(&mut a, &mut vt, negligible);
        off = off_diagonal_norm(&a);
    }
    // Jacobi converges quadratically, so one more sweep takes the remaining
    // off-diagonal mass to rounding level. Kernels with f̂ near 1e6 amplify
    // eigenvector errors, and this sweep removes most of that error cheaply.
    if n > 1 && off > 0.0 {
        sweeps += 1;
        sweep(&mut a, &mut vt, 0.0);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let eigenvalues = order.iter().map(|&i| a[(i, i)]).collect();
    let mut u = DenseMatrix::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        let col = vt.row(src);
        let flip = col
            .iter()
            .find(|c| c.abs() > SIGN_THRESHOLD)
            .is_some_and(|&c| c < 0.0);
        let sign = if flip { -1.0 } else { 1.0 };
        for v in 0..n {
            u[(v, k)] = sign * col[v];
        }
    }
    Ok(SpectralBasis {
        eigenvalues,
        eigenvectors: u,
        sweeps,
    })
}

fn sweep(a: &mut DenseMatrix, vt: &mut DenseMatrix, negligible: f64) {
    let n = a.rows();
    for p in 0..n {
        for q in (p + 1)..n {
            if a[(p, q)].abs() > negligible {
                rotate(a, vt, p, q);
            }
        }
    }
}

fn off_diagonal_norm(a: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for (j, v) in a.row(i).iter().enumerate() {
            if i != j {
                s += v * v;
            }
        }
    }
    s.sqrt()
}

/// Applies the Jacobi rotation that annihilates `a[p][q]` (`p < q`).
fn rotate(a: &mut DenseMatrix, vt: &mut DenseMatrix, p: usize, q: usize) {
    let n = a.rows();
    let apq = a[(p, q)];
    let app = a[(p, p)];
    let aqq = a[(q, q)];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    {
        let data = a.as_mut_slice();
        let (head, tail) = data.split_at_mut(q * n);
        let row_p = &mut head[p * n..(p + 1) * n];
        let row_q = &mut tail[..n];
        for k in 0..n {
            let akp = row_p[k];
            let akq = row_q[k];
            row_p[k] = c * akp - s * akq;
            row_q[k] = s * akp + c * akq;
        }
        row_p[p] = app - t * apq;
        row_q[q] = aqq + t * apq;
        row_p[q] = 0.0;
        row_q[p] = 0.0;
    }
    for k in 0..n {
        if k != p && k != q {
            a[(k, p)] = a[(p, k)];
            a[(k, q)] = a[(q, k)];
        }
    }

    let data = vt.as_mut_slice();
    let (head, tail) = data.split_at_mut(q * n);
    let vp = &mut head[p * n..(p + 1) * n];
    let vq = &mut tail[..n];
    for (x, y) in vp.iter_mut().zip(vq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

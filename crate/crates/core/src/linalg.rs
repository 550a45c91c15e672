//! Small dense linear-algebra kernels: a row-major matrix and a Cholesky solver.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Row-major dense matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest `|a_ij - a_ji|` together with its location, or `None` for non-square input.
    pub fn max_asymmetry(&self) -> Option<(usize, usize, f64)> {
        if !self.is_square() {
            return None;
        }
        let mut worst = (0, 0, 0.0);
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let gap = (self[(i, j)] - self[(j, i)]).abs();
                if gap > worst.2 {
                    worst = (i, j, gap);
                }
            }
        }
        Some(worst)
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lower-triangular Cholesky factor `L` with `A = L Lᵀ`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    lower: Vec<f64>,
}

impl Cholesky {
    /// Factorizes a symmetric positive-definite matrix, reading only its lower triangle.
    /// Returns `None` when a pivot is not strictly positive.
    pub fn factor(a: &DenseMatrix) -> Option<Self> {
        Self::factor_shifted(a, 0.0)
    }

    /// Factorizes `A + shift·I`.
    pub fn factor_shifted(a: &DenseMatrix, shift: f64) -> Option<Self> {
        let n = a.rows();
        debug_assert!(a.is_square());
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let row_j = j * n;
            let mut diag = a[(j, j)] + shift - dot(&l[row_j..row_j + j], &l[row_j..row_j + j]);
            if !(diag > 0.0) || !diag.is_finite() {
                return None;
            }
            diag = diag.sqrt();
            l[row_j + j] = diag;
            for i in (j + 1)..n {
                let row_i = i * n;
                let s = a[(i, j)] - dot(&l[row_i..row_i + j], &l[row_j..row_j + j]);
                l[row_i + j] = s / diag;
            }
        }
        Some(Self { n, lower: l })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        assert_eq!(b.len(), n, "right-hand side length");
        let mut y = b.to_vec();
        for i in 0..n {
            let s = dot(&self.lower[i * n..i * n + i], &y[..i]);
            y[i] = (y[i] - s) / self.lower[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s -= self.lower[k * n + i] * y[k];
            }
            y[i] = s / self.lower[i * n + i];
        }
        y
    }
}

/// Outcome of [`solve_spd`]: the solution and the diagonal jitter that was needed (0 if none).
#[derive(Debug, Clone)]
pub struct SpdSolution {
    pub x: Vec<f64>,
    pub jitter: f64,
    pub retries: usize,
}

pub const JITTER_RETRIES: usize = 3;

/// Solves `A x = b` for symmetric positive-definite `A` by Cholesky.
///
/// If the plain factorization fails, a diagonal jitter of `1e-12 · trace(A) / n` is
/// added and grown by a factor 100 per retry, up to [`JITTER_RETRIES`] times.
pub fn solve_spd(a: &DenseMatrix, b: &[f64]) -> Result<SpdSolution> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    if let Some(chol) = Cholesky::factor(a) {
        return Ok(SpdSolution {
            x: chol.solve(b),
            jitter: 0.0,
            retries: 0,
        });
    }
    let n = a.rows().max(1) as f64;
    let mut jitter = 1e-12 * a.trace().abs() / n;
    for retry in 1..=JITTER_RETRIES {
        if let Some(chol) = Cholesky::factor_shifted(a, jitter) {
            return Ok(SpdSolution {
                x: chol.solve(b),
                jitter,
                retries: retry,
            });
        }
        jitter *= 100.0;
    }
    Err(Error::SolveFailure {
        retries: JITTER_RETRIES,
    })
}
